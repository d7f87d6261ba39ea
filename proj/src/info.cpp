#include "covertbc/info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace covertbc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_alphabet(const Distribution& p, const Distribution& q, const char* op) {
  if (p.size() != q.size())
    throw DimensionMismatch("info-measures", op, "alphabet sizes differ");
}

}  // namespace

double kl_divergence(const Distribution& p, const Distribution& q) {
  require_same_alphabet(p, q, "kl_divergence");
  double sum = 0.0;
  for (std::size_t z = 0; z < p.size(); ++z) {
    if (p[z] == 0.0) continue;
    if (q[z] == 0.0) return kInf;
    sum += p[z] * std::log(p[z] / q[z]);
  }
  return std::max(0.0, sum);
}

double chi_squared(const Distribution& p, const Distribution& q) {
  require_same_alphabet(p, q, "chi_squared");
  double sum = 0.0;
  for (std::size_t z = 0; z < p.size(); ++z) {
    if (q[z] == 0.0) {
      if (p[z] > 0.0)
        throw SupportViolation("info-measures", "chi_squared",
                               "p has mass at symbol " + std::to_string(z) +
                                   " outside supp(q)");
      continue;
    }
    double d = p[z] - q[z];
    sum += d * d / q[z];
  }
  return sum;
}

double total_variation(const Distribution& p, const Distribution& q) {
  require_same_alphabet(p, q, "total_variation");
  double sum = 0.0;
  for (std::size_t z = 0; z < p.size(); ++z) sum += std::abs(p[z] - q[z]);
  return 0.5 * sum;
}

double binary_entropy(double q) {
  if (q < 0.0 || q > 1.0)
    throw OutOfRange("info-measures", "binary_entropy", "argument outside [0,1]");
  if (q == 0.0 || q == 1.0) return 0.0;
  return -q * std::log(q) - (1.0 - q) * std::log(1.0 - q);
}

double inv_binary_entropy(double h) {
  constexpr double kLn2 = 0.6931471805599453;
  if (h < 0.0 || h > kLn2 + 1e-15)
    throw OutOfRange("info-measures", "inv_binary_entropy", "argument outside [0, ln 2]");
  if (h <= 0.0) return 0.0;
  if (h >= kLn2) return 0.5;
  double lo = 0.0, hi = 0.5;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) < h)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double binary_convolution(double a, double b) {
  if (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0)
    throw OutOfRange("info-measures", "binary_convolution", "arguments outside [0,1]");
  return a * (1.0 - b) + b * (1.0 - a);
}

double mutual_information(const Distribution& px, const Channel& ch) {
  if (px.size() != ch.num_inputs())
    throw DimensionMismatch("info-measures", "mutual_information",
                            "input distribution does not match channel inputs");
  Distribution out = induced_output(px, ch);
  double mi = 0.0;
  for (std::size_t x = 0; x < px.size(); ++x) {
    if (px[x] == 0.0) continue;
    for (std::size_t y = 0; y < out.size(); ++y) {
      double w = ch.row(x)[y];
      if (w == 0.0) continue;
      mi += px[x] * w * std::log(w / out[y]);
    }
  }
  return std::max(0.0, mi);
}

Distribution sparse_input(double gamma, const std::vector<double>& mix_p,
                          std::size_t num_inputs) {
  if (gamma < 0.0 || gamma > 1.0)
    throw OutOfRange("info-measures", "sparse_input", "gamma outside [0,1]");
  if (mix_p.size() + 1 != num_inputs)
    throw DimensionMismatch("info-measures", "sparse_input",
                            "mixing vector must cover inputs 1..K");
  std::vector<double> p(num_inputs, 0.0);
  p[0] = 1.0 - gamma;
  for (std::size_t k = 0; k < mix_p.size(); ++k) p[k + 1] = gamma * mix_p[k];
  return Distribution{std::move(p)};
}

SparseMiDecomposition sparse_mi_decomposition(double gamma, const std::vector<double>& mix_p,
                                              const Channel& ch) {
  Distribution pin = sparse_input(gamma, mix_p, ch.num_inputs());
  double linear = 0.0;
  for (std::size_t k = 0; k < mix_p.size(); ++k) {
    if (mix_p[k] == 0.0 || gamma == 0.0) continue;
    double d = kl_divergence(ch.row(k + 1), ch.row(0));
    if (d == kInf)
      throw SupportViolation("info-measures", "sparse_mi_decomposition",
                             "row " + std::to_string(k + 1) +
                                 " not absolutely continuous w.r.t. the no-input row");
    linear += gamma * mix_p[k] * d;
  }
  Distribution mixed = induced_output(pin, ch);
  double kl = kl_divergence(mixed, ch.row(0));
  double mi = mutual_information(pin, ch);
  return SparseMiDecomposition{linear, kl, mi};
}

std::pair<double, double> kl_sandwich(double gamma, const std::vector<double>& mix_p,
                                      const Channel& warden) {
  if (gamma <= 0.0 || gamma > 1.0)
    throw OutOfRange("info-measures", "kl_sandwich", "gamma outside (0,1]");
  std::vector<double> mix(warden.num_outputs(), 0.0);
  for (std::size_t k = 0; k < mix_p.size(); ++k)
    for (std::size_t z = 0; z < mix.size(); ++z) mix[z] += mix_p[k] * warden.row(k + 1)[z];
  double chi2 = chi_squared(Distribution{mix}, warden.row(0));
  double half_quadratic = 0.5 * gamma * gamma * chi2;
  double root = std::sqrt(gamma);
  return {half_quadratic * (1.0 - root), half_quadratic * (1.0 + root)};
}

double detection_bounds(double kl) {
  if (kl < 0.0)
    throw OutOfRange("info-measures", "detection_bounds", "kl must be non-negative");
  return std::max(0.0, 1.0 - std::sqrt(kl));
}

double detection_sum(double tv) {
  if (tv < 0.0 || tv > 1.0)
    throw OutOfRange("info-measures", "detection_sum", "tv outside [0,1]");
  return 1.0 - tv;
}

double inverse_q_function(double u) {
  if (u <= 0.0 || u >= 1.0)
    throw OutOfRange("info-measures", "inverse_q_function", "argument outside (0,1)");
  // Bisection on Q(x) = erfc(x/sqrt(2))/2, then Newton polish.
  double lo = -40.0, hi = 40.0;
  auto q = [](double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); };
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    double mid = 0.5 * (lo + hi);
    if (q(mid) > u)
      lo = mid;
    else
      hi = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    if (pdf < 1e-300) break;
    x -= (u - q(x)) / pdf;
  }
  return x;
}

double gamma_delta(double delta) {
  if (delta <= 0.0 || delta >= 1.0)
    throw OutOfRange("info-measures", "gamma_delta", "delta outside (0,1)");
  return std::sqrt(2.0) * inverse_q_function((1.0 - delta) / 2.0);
}

}  // namespace covertbc
