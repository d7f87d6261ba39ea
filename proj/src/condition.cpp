#include "covertbc/condition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "covertbc/capacity.hpp"
#include "covertbc/info.hpp"
#include "covertbc/simplex.hpp"

namespace covertbc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Mutual-information values carry an absolute rounding error of order 1e-16,
// so the ratio is only evaluated where the denominator clears a trust floor.
// A vanishing denominator with a macroscopic numerator is the divergent case.
constexpr double kDenTrust = 1e-7;
constexpr double kNumDivergence = 1e-2;
constexpr double kVerdictTol = 1e-9;
constexpr double kGammaGridStep = 1e-4;

double ratio_with_conventions(double num, double den) {
  if (den < kDenTrust) return num > kNumDivergence ? kInf : -kInf;
  return num / den;
}

// The ratio approaches the dominance threshold exactly at the no-input
// vertex, so ties there sit at rounding-noise level; the tolerance carries a
// relative term to keep tie verdicts stable.
double verdict_tolerance(double threshold) { return kVerdictTol + 1e-7 * threshold; }

// Golden-section maximization of a unimodal-enough bracket.
template <typename F>
std::pair<double, double> golden_max(F f, double lo, double hi) {
  constexpr double kPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kPhi * (b - a), x2 = a + kPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80 && b - a > 1e-13; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kPhi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

struct DominanceSplit {
  const Channel* dom;
  const Channel* weak;
  int dominant_receiver;
  double threshold;
};

DominanceSplit split_by_dominance(const BroadcastSpec& spec, const char* op) {
  CovertCapacityResult c1 = covert_capacity_general(spec.w, spec.warden);
  CovertCapacityResult c2 = covert_capacity_general(spec.v, spec.warden);
  DominanceSplit split;
  if (c1.l_star >= c2.l_star) {
    split.dom = &spec.w;
    split.weak = &spec.v;
    split.dominant_receiver = 1;
    if (c2.zero_capacity)
      throw DegenerateDenominator(op, c1.zero_capacity
                                          ? "both receivers have constant channels"
                                          : "weaker receiver has a constant channel");
    split.threshold = c1.l_star / c2.l_star;
  } else {
    split.dom = &spec.v;
    split.weak = &spec.w;
    split.dominant_receiver = 2;
    if (c1.zero_capacity)
      throw DegenerateDenominator(op, "weaker receiver has a constant channel");
    split.threshold = c2.l_star / c1.l_star;
  }
  return split;
}

}  // namespace

double condition_ratio(const BroadcastSpec& spec, const Distribution& px,
                       int dominant_receiver) {
  const Channel& dom = dominant_receiver == 1 ? spec.w : spec.v;
  const Channel& weak = dominant_receiver == 1 ? spec.v : spec.w;
  return ratio_with_conventions(mutual_information(px, dom), mutual_information(px, weak));
}

ConditionVerdict check_condition(const BroadcastSpec& spec) {
  DominanceSplit split = split_by_dominance(spec, "check_condition");
  const std::size_t dim = spec.num_inputs();
  const Channel& dom = *split.dom;
  const Channel& weak = *split.weak;

  auto fn = [&](const std::vector<double>& p) {
    Distribution px{p};
    return ratio_with_conventions(mutual_information(px, dom), mutual_information(px, weak));
  };
  auto mi_gradient = [](const Distribution& px, const Channel& ch) {
    Distribution out = induced_output(px, ch);
    std::vector<double> g(px.size(), 0.0);
    for (std::size_t x = 0; x < px.size(); ++x) {
      double d = 0.0;
      for (std::size_t y = 0; y < out.size(); ++y) {
        double w = ch.row(x)[y];
        if (w == 0.0) continue;
        d += out[y] > 0.0 ? w * std::log(w / out[y]) : 1e6;
      }
      g[x] = d - 1.0;
    }
    return g;
  };
  auto grad = [&](const std::vector<double>& p) {
    Distribution px{p};
    double num = mutual_information(px, dom);
    double den = mutual_information(px, weak);
    std::vector<double> g(p.size(), 0.0);
    if (den < kDenTrust) return g;
    std::vector<double> gn = mi_gradient(px, dom);
    std::vector<double> gd = mi_gradient(px, weak);
    for (std::size_t x = 0; x < p.size(); ++x)
      g[x] = (gn[x] * den - num * gd[x]) / (den * den);
    return g;
  };

  SimplexMaxResult opt = maximize_on_simplex(dim, fn, grad);

  // For binary inputs, also probe the logarithmic tails of the sparse-input
  // line, where the ratio approaches its boundary limits.
  if (dim == 2) {
    for (double gamma = 2e-6; gamma < 2e-4; gamma *= 1.3335) {
      for (double g : {gamma, 1.0 - gamma}) {
        std::vector<double> p = {1.0 - g, g};
        double value = fn(p);
        if (value > opt.value) {
          opt.value = value;
          opt.argmax = p;
        }
      }
    }
  }

  ConditionVerdict verdict;
  verdict.dominant_receiver = split.dominant_receiver;
  verdict.threshold = split.threshold;
  verdict.worst_ratio = opt.value;
  verdict.witness_px = Distribution{opt.argmax};
  double tol = verdict_tolerance(split.threshold);
  verdict.satisfied = opt.value <= split.threshold + tol;
  verdict.boundary_tie = std::abs(opt.value - split.threshold) <= tol;
  return verdict;
}

ConditionVerdict check_condition_binary(const BroadcastSpec& spec) {
  if (spec.num_inputs() != 2)
    throw OutOfRange("condition-region", "check_condition_binary", "input alphabet is not binary");

  CovertCapacityResult c1 = covert_capacity_binary(spec.w, spec.warden);
  CovertCapacityResult c2 = covert_capacity_binary(spec.v, spec.warden);
  const bool first_dominant = c1.l_star >= c2.l_star;
  const Channel& dom = first_dominant ? spec.w : spec.v;
  const Channel& weak = first_dominant ? spec.v : spec.w;
  const CovertCapacityResult& cweak = first_dominant ? c2 : c1;
  const CovertCapacityResult& cdom = first_dominant ? c1 : c2;
  if (cweak.zero_capacity)
    throw DegenerateDenominator("check_condition_binary",
                                cdom.zero_capacity ? "both receivers have constant channels"
                                                   : "weaker receiver has a constant channel");
  const double threshold = cdom.l_star / cweak.l_star;

  const double d_dom = kl_divergence(dom.row(1), dom.row(0));
  const double d_weak = kl_divergence(weak.row(1), weak.row(0));
  // D(R_gamma || R_0) through log1p, cancellation-free down to tiny gamma.
  // Rows outside supp(R_0) cannot occur: absolute continuity was checked by
  // the capacity computations above.
  auto mixed_kl = [](const Channel& ch, double gamma) {
    double sum = 0.0;
    for (std::size_t y = 0; y < ch.num_outputs(); ++y) {
      double base = ch.row(0)[y];
      if (base == 0.0) continue;
      double delta = ch.row(1)[y] - base;
      sum += (base + gamma * delta) * std::log1p(gamma * delta / base);
    }
    return std::max(0.0, sum);
  };

  // Divergence-ratio line search; the gamma = 0 entry is the analytic
  // chi-squared limit.
  auto g_ratio = [&](double gamma) {
    if (gamma <= 0.0)
      return chi_squared(dom.row(1), dom.row(0)) / chi_squared(weak.row(1), weak.row(0));
    double den = mixed_kl(weak, gamma);
    if (den <= 0.0) return kInf;
    return mixed_kl(dom, gamma) / den;
  };
  const std::size_t grid_n = static_cast<std::size_t>(std::llround(1.0 / kGammaGridStep));
  double min_g = kInf;
  std::size_t min_idx = 0;
  for (std::size_t i = 0; i <= grid_n; ++i) {
    double value = g_ratio(static_cast<double>(i) * kGammaGridStep);
    if (value < min_g) {
      min_g = value;
      min_idx = i;
    }
  }
  {
    double lo = min_idx > 0 ? static_cast<double>(min_idx - 1) * kGammaGridStep : 0.0;
    double hi = static_cast<double>(std::min(min_idx + 1, grid_n)) * kGammaGridStep;
    auto [gamma_star, neg] = golden_max([&](double g) { return -g_ratio(g); }, lo, hi);
    (void)gamma_star;
    min_g = std::min(min_g, -neg);
  }
  const double lhs = d_dom / d_weak;
  const bool satisfied = lhs <= min_g + verdict_tolerance(lhs);

  // Mutual-information ratio scan for the verdict payload, via the sparse
  // identity I(P_gamma) = gamma D_1 - D(mix||row 0). The lattice carries
  // logarithmic tails so boundary-limit suprema are approached as closely as
  // in the general engine.
  auto mi_ratio = [&](double gamma) {
    double den = gamma * d_weak - mixed_kl(weak, gamma);
    double num = gamma * d_dom - mixed_kl(dom, gamma);
    return ratio_with_conventions(num, den);
  };
  std::vector<double> gammas;
  for (double gamma = 2e-6; gamma < kGammaGridStep; gamma *= 1.3335) {
    gammas.push_back(gamma);
    gammas.push_back(1.0 - gamma);
  }
  for (std::size_t i = 1; i < grid_n; ++i)
    gammas.push_back(static_cast<double>(i) * kGammaGridStep);
  std::sort(gammas.begin(), gammas.end());

  double worst = -kInf;
  std::size_t worst_idx = 0;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    double value = mi_ratio(gammas[i]);
    if (value > worst) {
      worst = value;
      worst_idx = i;
    }
  }
  double worst_gamma = gammas.empty() ? 0.5 : gammas[worst_idx];
  if (std::isfinite(worst) && !gammas.empty()) {
    double lo = worst_idx > 0 ? gammas[worst_idx - 1] : gammas[worst_idx] * 0.5;
    double hi = worst_idx + 1 < gammas.size() ? gammas[worst_idx + 1]
                                              : 0.5 * (1.0 + gammas[worst_idx]);
    auto [gamma_star, value] = golden_max(mi_ratio, lo, hi);
    if (value > worst) {
      worst = value;
      worst_gamma = gamma_star;
    }
  }

  ConditionVerdict verdict;
  verdict.satisfied = satisfied;
  verdict.dominant_receiver = first_dominant ? 1 : 2;
  verdict.threshold = threshold;
  verdict.worst_ratio = worst;
  verdict.witness_px = bernoulli(worst_gamma);
  verdict.boundary_tie = std::abs(lhs - min_g) <= verdict_tolerance(lhs) ||
                         std::abs(worst - threshold) <= verdict_tolerance(threshold);
  return verdict;
}

namespace {

CellVerdict evaluate_cell(const Channel& w, const Channel& warden, double q0, double q1) {
  try {
    Channel v = validate_channel({{1.0 - q0, q0}, {q1, 1.0 - q1}});
    BroadcastSpec spec = make_broadcast_spec(w, v, warden);
    return check_condition_binary(spec).satisfied ? CellVerdict::Satisfied
                                                  : CellVerdict::Unsatisfied;
  } catch (const Error&) {
    return CellVerdict::Degenerate;
  }
}

ConditionMap map_skeleton(const Channel& w, double grid_step) {
  if (w.num_inputs() != 2)
    throw OutOfRange("condition-region", "condition_map", "w must be binary-input");
  if (!(grid_step > 0.0) || grid_step > 0.1)
    throw OutOfRange("condition-region", "condition_map", "grid_step outside (0, 0.1]");
  ConditionMap map;
  map.grid_step = grid_step;
  const std::size_t cells = static_cast<std::size_t>(std::llround(1.0 / grid_step));
  map.q_values.resize(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i)
    map.q_values[i] = std::min(1.0, static_cast<double>(i) * grid_step);
  map.cells.assign(cells + 1, std::vector<CellVerdict>(cells + 1, CellVerdict::Degenerate));
  return map;
}

}  // namespace

ConditionMap condition_map(const Channel& w, const Channel& warden, double grid_step) {
  ConditionMap map = map_skeleton(w, grid_step);
  const long long side = static_cast<long long>(map.q_values.size());
#pragma omp parallel for collapse(2) schedule(dynamic)
  for (long long i = 0; i < side; ++i) {
    for (long long j = 0; j < side; ++j) {
      map.cells[i][j] = evaluate_cell(w, warden, map.q_values[i], map.q_values[j]);
    }
  }
  return map;
}

ConditionMap condition_map_serial(const Channel& w, const Channel& warden, double grid_step) {
  ConditionMap map = map_skeleton(w, grid_step);
  for (std::size_t i = 0; i < map.q_values.size(); ++i)
    for (std::size_t j = 0; j < map.q_values.size(); ++j)
      map.cells[i][j] = evaluate_cell(w, warden, map.q_values[i], map.q_values[j]);
  return map;
}

}  // namespace covertbc
