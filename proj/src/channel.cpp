#include "covertbc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "covertbc/simplex.hpp"

namespace covertbc {

Distribution make_distribution(std::vector<double> probs, const char* op) {
  if (probs.empty())
    throw NonStochasticRow(op, "empty probability vector");
  double sum = 0.0;
  for (double x : probs) {
    if (x < 0.0)
      throw NonStochasticRow(op, "negative entry " + std::to_string(x));
    sum += x;
  }
  if (std::abs(sum - 1.0) > kStochasticTol)
    throw NonStochasticRow(op, "entries sum to " + std::to_string(sum));
  for (double& x : probs) x /= sum;
  return Distribution{std::move(probs)};
}

Distribution bernoulli(double prob_of_one) {
  return make_distribution({1.0 - prob_of_one, prob_of_one}, "bernoulli");
}

Distribution point_mass(std::size_t index, std::size_t alphabet_size) {
  std::vector<double> p(alphabet_size, 0.0);
  p.at(index) = 1.0;
  return Distribution{std::move(p)};
}

Channel validate_channel(const std::vector<std::vector<double>>& matrix) {
  if (matrix.empty())
    throw NonStochasticRow("validate_channel", "empty matrix");
  const std::size_t width = matrix[0].size();
  Channel ch;
  ch.rows.reserve(matrix.size());
  for (std::size_t x = 0; x < matrix.size(); ++x) {
    if (matrix[x].size() != width)
      throw NonStochasticRow("validate_channel",
                             "row " + std::to_string(x) + " has ragged width");
    ch.rows.push_back(make_distribution(matrix[x], "validate_channel"));
  }
  return ch;
}

Channel bsc(double crossover) {
  if (crossover < 0.0 || crossover > 1.0)
    throw OutOfRange("channel-core", "bsc", "crossover outside [0,1]");
  return validate_channel({{1.0 - crossover, crossover}, {crossover, 1.0 - crossover}});
}

bool is_absolutely_continuous(const Channel& ch) {
  const Distribution& base = ch.row(0);
  for (std::size_t k = 1; k < ch.num_inputs(); ++k) {
    for (std::size_t y = 0; y < ch.num_outputs(); ++y) {
      if (base[y] == 0.0 && ch.row(k)[y] > 0.0) return false;
    }
  }
  return true;
}

namespace {

// Squared residual ||sum_k p_k Q_k - Q_0||^2 and its gradient.
double hull_residual(const Channel& warden, const std::vector<double>& p,
                     std::vector<double>* grad) {
  const std::size_t num_mix = warden.num_inputs() - 1;
  const std::size_t width = warden.num_outputs();
  std::vector<double> diff(width, 0.0);
  for (std::size_t z = 0; z < width; ++z) {
    double mix = 0.0;
    for (std::size_t k = 0; k < num_mix; ++k) mix += p[k] * warden.row(k + 1)[z];
    diff[z] = mix - warden.row(0)[z];
  }
  double value = 0.0;
  for (double d : diff) value += d * d;
  if (grad) {
    grad->assign(num_mix, 0.0);
    for (std::size_t k = 0; k < num_mix; ++k) {
      double g = 0.0;
      for (std::size_t z = 0; z < width; ++z) g += 2.0 * diff[z] * warden.row(k + 1)[z];
      (*grad)[k] = g;
    }
  }
  return value;
}

// Solves the symmetric KKT system of the equality-constrained least squares
// restricted to the active support; returns false when singular.
bool solve_dense(std::vector<std::vector<double>> a, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-14) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      double factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return true;
}

// Refines a near-feasible mixture by solving the least-squares KKT system on
// the support detected by the projected-gradient phase.
double polish_on_support(const Channel& warden, const std::vector<double>& p_in,
                         std::vector<double>& p_out) {
  const std::size_t num_mix = p_in.size();
  std::vector<std::size_t> support;
  for (std::size_t k = 0; k < num_mix; ++k)
    if (p_in[k] > 1e-10) support.push_back(k);
  if (support.empty()) return hull_residual(warden, p_in, nullptr);

  const std::size_t s = support.size();
  const std::size_t width = warden.num_outputs();
  std::vector<std::vector<double>> kkt(s + 1, std::vector<double>(s + 1, 0.0));
  std::vector<double> rhs(s + 1, 0.0);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      double dot = 0.0;
      for (std::size_t z = 0; z < width; ++z)
        dot += warden.row(support[i] + 1)[z] * warden.row(support[j] + 1)[z];
      kkt[i][j] = 2.0 * dot;
    }
    double dot0 = 0.0;
    for (std::size_t z = 0; z < width; ++z)
      dot0 += warden.row(support[i] + 1)[z] * warden.row(0)[z];
    rhs[i] = 2.0 * dot0;
    kkt[i][s] = 1.0;
    kkt[s][i] = 1.0;
  }
  rhs[s] = 1.0;
  if (!solve_dense(kkt, rhs)) return hull_residual(warden, p_in, nullptr);

  std::vector<double> candidate(num_mix, 0.0);
  for (std::size_t i = 0; i < s; ++i) {
    if (rhs[i] < -1e-9) return hull_residual(warden, p_in, nullptr);
    candidate[support[i]] = std::max(0.0, rhs[i]);
  }
  double sum = std::accumulate(candidate.begin(), candidate.end(), 0.0);
  if (sum <= 0.0) return hull_residual(warden, p_in, nullptr);
  for (double& x : candidate) x /= sum;
  double value = hull_residual(warden, candidate, nullptr);
  double base = hull_residual(warden, p_in, nullptr);
  if (value < base) {
    p_out = candidate;
    return value;
  }
  p_out = p_in;
  return base;
}

}  // namespace

bool is_no_input_redundant(const Channel& warden) {
  if (warden.num_inputs() < 2)
    throw OutOfRange("channel-core", "is_no_input_redundant", "need at least two inputs");
  const std::size_t num_mix = warden.num_inputs() - 1;

  std::vector<double> p(num_mix, 1.0 / static_cast<double>(num_mix));
  double value = hull_residual(warden, p, nullptr);
  double step = 1.0;
  std::vector<double> grad;
  for (int it = 0; it < 20000 && value > 1e-20; ++it) {
    hull_residual(warden, p, &grad);
    bool improved = false;
    for (int bt = 0; bt < 50; ++bt) {
      std::vector<double> trial(num_mix);
      for (std::size_t k = 0; k < num_mix; ++k) trial[k] = p[k] - step * grad[k];
      trial = project_to_simplex(std::move(trial));
      double trial_value = hull_residual(warden, trial, nullptr);
      if (trial_value < value) {
        p = std::move(trial);
        value = trial_value;
        improved = true;
        step *= 1.5;
        break;
      }
      step *= 0.5;
      if (step < 1e-16) break;
    }
    if (!improved) break;
  }
  std::vector<double> polished = p;
  value = std::min(value, polish_on_support(warden, p, polished));
  // Feasible iff the residual norm is below 1e-9, i.e. squared < 1e-18.
  return value < 1e-18;
}

Distribution induced_output(const Distribution& px, const Channel& ch) {
  if (px.size() != ch.num_inputs())
    throw DimensionMismatch("channel-core", "induced_output",
                            "input distribution has " + std::to_string(px.size()) +
                                " entries, channel expects " + std::to_string(ch.num_inputs()));
  std::vector<double> out(ch.num_outputs(), 0.0);
  for (std::size_t x = 0; x < px.size(); ++x) {
    if (px[x] == 0.0) continue;
    for (std::size_t y = 0; y < out.size(); ++y) out[y] += px[x] * ch.row(x)[y];
  }
  return Distribution{std::move(out)};
}

BroadcastSpec make_broadcast_spec(Channel w, Channel v, Channel warden) {
  if (w.num_inputs() != v.num_inputs() || w.num_inputs() != warden.num_inputs())
    throw DimensionMismatch("channel-core", "make_broadcast_spec",
                            "channels disagree on the number of inputs");
  if (w.num_inputs() < 2)
    throw OutOfRange("channel-core", "make_broadcast_spec", "need at least two inputs");

  PruneReport report;
  std::vector<bool> keep_output(warden.num_outputs());
  for (std::size_t z = 0; z < warden.num_outputs(); ++z) {
    keep_output[z] = warden.row(0)[z] > 0.0;
    if (!keep_output[z]) report.dropped_warden_outputs.push_back(z);
  }

  std::vector<bool> keep_input(warden.num_inputs(), true);
  for (std::size_t x = 1; x < warden.num_inputs(); ++x) {
    for (std::size_t z = 0; z < warden.num_outputs(); ++z) {
      if (!keep_output[z] && warden.row(x)[z] > 0.0) {
        keep_input[x] = false;
        report.dropped_inputs.push_back(x);
        break;
      }
    }
  }

  auto filter_channel = [&](const Channel& ch, bool filter_outputs) {
    std::vector<std::vector<double>> rows;
    for (std::size_t x = 0; x < ch.num_inputs(); ++x) {
      if (!keep_input[x]) continue;
      std::vector<double> row;
      for (std::size_t y = 0; y < ch.num_outputs(); ++y) {
        if (filter_outputs && !keep_output[y]) continue;
        row.push_back(ch.row(x)[y]);
      }
      rows.push_back(std::move(row));
    }
    return validate_channel(rows);
  };

  BroadcastSpec spec;
  spec.warden = filter_channel(warden, true);
  spec.w = filter_channel(w, false);
  spec.v = filter_channel(v, false);
  spec.pruning = std::move(report);
  if (spec.num_inputs() < 2)
    throw SupportViolation("channel-core", "make_broadcast_spec",
                           "pruning removed every communicating input symbol");
  return spec;
}

GaussianBroadcastSpec make_gaussian_spec(double n1, double n2, double sigma2) {
  if (!(n1 > 0.0) || !(n2 > 0.0) || !(sigma2 > 0.0))
    throw OutOfRange("channel-core", "make_gaussian_spec", "variances must be positive");
  return GaussianBroadcastSpec{n1, n2, sigma2};
}

}  // namespace covertbc
