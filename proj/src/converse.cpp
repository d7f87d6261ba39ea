#include "covertbc/converse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "covertbc/capacity.hpp"
#include "covertbc/info.hpp"

namespace covertbc {

namespace {

constexpr double kEnvelopeTol = 1e-9;
constexpr std::size_t kGridPoints = 2048;

double mixture_chi2(const Channel& warden, const std::vector<double>& mix_p) {
  std::vector<double> mix(warden.num_outputs(), 0.0);
  for (std::size_t k = 0; k < mix_p.size(); ++k)
    for (std::size_t z = 0; z < mix.size(); ++z) mix[z] += mix_p[k] * warden.row(k + 1)[z];
  return chi_squared(Distribution{mix}, warden.row(0));
}

}  // namespace

WeightBudget max_weight(double delta, long long n, const Channel& warden,
                        const std::vector<double>& mix_p) {
  if (!(delta > 0.0))
    throw OutOfRange("converse-engine", "max_weight", "delta must be positive");
  if (n < 1)
    throw OutOfRange("converse-engine", "max_weight", "n must be at least 1");
  if (mix_p.size() + 1 != warden.num_inputs())
    throw DimensionMismatch("converse-engine", "max_weight",
                            "mixing vector must cover inputs 1..K");
  if (is_no_input_redundant(warden))
    throw RedundantNoInput("converse-engine", "max_weight",
                           "warden no-input row lies in the hull of the other rows");
  double chi2 = mixture_chi2(warden, mix_p);
  WeightBudget budget;
  budget.alpha_bar = std::sqrt(2.0 * delta / (chi2 * static_cast<double>(n)));
  budget.n = n;
  budget.delta = delta;
  budget.mix_p = mix_p;
  return budget;
}

WeightBudget max_weight_gaussian(double delta, long long n, double sigma2) {
  if (!(delta > 0.0) || n < 1 || !(sigma2 > 0.0))
    throw OutOfRange("converse-engine", "max_weight_gaussian", "invalid parameters");
  WeightBudget budget;
  budget.alpha_bar = 2.0 * sigma2 * std::sqrt(delta / static_cast<double>(n));
  budget.n = n;
  budget.delta = delta;
  budget.mix_p = {1.0};
  return budget;
}

double admissible_weight_root(double alpha_bar) {
  if (alpha_bar <= 0.0) return 0.0;
  // a^2 (1 - sqrt(a)) rises until a = 0.64 and falls back to zero at a = 1;
  // the admissible weight is the root on the rising branch.
  constexpr double kPeakArg = 0.64;
  constexpr double kPeakValue = 0.08192;
  double target = alpha_bar * alpha_bar;
  if (target >= kPeakValue) return 1.0;  // constraint vacuous, beyond the sparse regime
  auto constraint = [&](double a) { return a * a * (1.0 - std::sqrt(a)) - target; };
  double lo = std::min(alpha_bar, kPeakArg), hi = kPeakArg;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    double mid = 0.5 * (lo + hi);
    if (constraint(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double EnvelopeFn::operator()(double x) const {
  if (knots.empty()) return 0.0;
  if (x <= knots.front().first) return knots.front().second;
  if (x >= knots.back().first) return knots.back().second;
  std::size_t lo = 0, hi = knots.size() - 1;
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (knots[mid].first <= x)
      lo = mid;
    else
      hi = mid;
  }
  double x0 = knots[lo].first, x1 = knots[hi].first;
  double y0 = knots[lo].second, y1 = knots[hi].second;
  double t = (x - x0) / (x1 - x0);
  return y0 + t * (y1 - y0);
}

double EnvelopeFn::max_value() const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [x, y] : knots) best = std::max(best, y);
  return best;
}

EnvelopeFn upper_concave_envelope(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2)
    throw TooFewSamples("upper_concave_envelope", "need at least two samples");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].first > samples[i - 1].first))
      throw OutOfRange("converse-engine", "upper_concave_envelope",
                       "sample abscissae must be strictly increasing");
  }
  // Monotone-chain upper hull: slopes non-increasing left to right.
  std::vector<std::pair<double, double>> hull;
  for (const auto& point : samples) {
    while (hull.size() >= 2) {
      const auto& [x1, y1] = hull[hull.size() - 2];
      const auto& [x2, y2] = hull[hull.size() - 1];
      // Pop unless (x2,y2) lies strictly above the chord (x1,y1)-(point).
      if ((y2 - y1) * (point.first - x2) > (point.second - y2) * (x2 - x1)) break;
      hull.pop_back();
    }
    hull.push_back(point);
  }
  return EnvelopeFn{std::move(hull)};
}

ConverseBound lambda_sum_bound(const BroadcastSpec& spec, const WeightBudget& budget) {
  CovertCapacityResult c1 = covert_capacity_general(spec.w, spec.warden);
  CovertCapacityResult c2 = covert_capacity_general(spec.v, spec.warden);
  const bool first_dominant = c1.l_star >= c2.l_star;
  const Channel& dom = first_dominant ? spec.w : spec.v;
  const Channel& weak = first_dominant ? spec.v : spec.w;
  const double l_weak = first_dominant ? c2.l_star : c1.l_star;
  const double l_dom = first_dominant ? c1.l_star : c2.l_star;
  if (l_weak <= 0.0)
    throw DegenerateDenominator("lambda_sum_bound", "weaker receiver has zero capacity");
  const double lambda = l_dom / l_weak;

  ConverseBound bound;
  bound.lambda = lambda;

  const double alpha_max = std::min(1.0, admissible_weight_root(budget.alpha_bar));
  if (alpha_max <= 0.0) {
    bound.bound_nats = 0.0;
    bound.normalized = 0.0;
    bound.envelope_term = 0.0;
    return bound;
  }

  auto weak_mi = [&](double alpha) {
    return mutual_information(sparse_input(alpha, budget.mix_p, weak.num_inputs()), weak);
  };
  auto inner = [&](double alpha) {
    Distribution px = sparse_input(alpha, budget.mix_p, dom.num_inputs());
    return mutual_information(px, dom) - lambda * mutual_information(px, weak);
  };

  std::vector<std::pair<double, double>> samples(kGridPoints + 1);
  for (std::size_t i = 0; i <= kGridPoints; ++i) {
    double alpha = alpha_max * static_cast<double>(i) / static_cast<double>(kGridPoints);
    samples[i] = {alpha, inner(alpha)};
  }
  EnvelopeFn envelope = upper_concave_envelope(samples);
  bound.envelope_term = envelope.max_value();
  if (bound.envelope_term > kEnvelopeTol)
    throw ConditionViolated("lambda_sum_bound",
                            "envelope term positive while the ratio condition was claimed");

  auto total = [&](double alpha) { return lambda * weak_mi(alpha) + envelope(alpha); };
  double best = 0.0;
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i <= kGridPoints; ++i) {
    double value = total(samples[i].first);
    if (value > best) {
      best = value;
      best_idx = i;
    }
  }
  // One refinement pass on a 10x finer local lattice around the incumbent.
  double step = alpha_max / static_cast<double>(kGridPoints);
  double lo = best_idx > 0 ? samples[best_idx - 1].first : 0.0;
  double hi = std::min(alpha_max, samples[best_idx].first + step);
  for (int i = 0; i <= 20; ++i) {
    double alpha = lo + (hi - lo) * static_cast<double>(i) / 20.0;
    best = std::max(best, total(alpha));
  }

  bound.bound_nats = best;
  bound.normalized = best * std::sqrt(static_cast<double>(budget.n) / budget.delta);
  return bound;
}

std::vector<std::pair<double, double>> bsc_converse_region(double p1, double p2,
                                                           const WeightBudget& budget,
                                                           std::size_t resolution) {
  if (!(0.0 <= p1 && p1 <= p2 && p2 <= 0.5))
    throw OutOfRange("converse-engine", "bsc_converse_region",
                     "need 0 <= p1 <= p2 <= 1/2");
  if (resolution < 2)
    throw OutOfRange("converse-engine", "bsc_converse_region", "resolution must be >= 2");
  auto slope = [](double p) {
    if (p == 0.5) return 0.0;
    if (p == 0.0) return std::numeric_limits<double>::infinity();
    return (1.0 - 2.0 * p) * std::log((1.0 - p) / p);
  };
  const double c1 = slope(p1), c2 = slope(p2);
  const double a = budget.alpha_bar * std::sqrt(static_cast<double>(budget.n));
  std::vector<std::pair<double, double>> sweep(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    double t = a * static_cast<double>(i) / static_cast<double>(resolution - 1);
    sweep[i] = {t == 0.0 ? 0.0 : c1 * t, t == a ? 0.0 : c2 * (a - t)};
  }
  return sweep;
}

std::vector<std::pair<double, double>> gaussian_converse_region(double n1, double n2,
                                                                double sigma2,
                                                                const WeightBudget& budget,
                                                                std::size_t resolution) {
  if (!(0.0 < n1 && n1 <= n2) || !(sigma2 > 0.0))
    throw OutOfRange("converse-engine", "gaussian_converse_region",
                     "need 0 < n1 <= n2 and sigma2 > 0");
  if (resolution < 2)
    throw OutOfRange("converse-engine", "gaussian_converse_region", "resolution must be >= 2");
  const double alpha = budget.alpha_bar;
  std::vector<std::pair<double, double>> sweep(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    double tau = alpha * static_cast<double>(i) / static_cast<double>(resolution - 1);
    sweep[i] = {tau / (2.0 * n1), (alpha - tau) / (2.0 * n2)};
  }
  return sweep;
}

std::pair<double, double> mrs_gerber_check(double h, double p) {
  constexpr double kLn2 = 0.6931471805599453;
  if (h < 0.0 || h > kLn2 + 1e-15)
    throw OutOfRange("converse-engine", "mrs_gerber_check", "h outside [0, ln 2]");
  if (p < 0.0 || p > 0.5)
    throw OutOfRange("converse-engine", "mrs_gerber_check", "p outside [0, 1/2]");
  double lhs = binary_entropy(binary_convolution(inv_binary_entropy(h), p));
  return {lhs, h};
}

}  // namespace covertbc
