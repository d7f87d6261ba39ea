#include "covertbc/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "covertbc/info.hpp"
#include "covertbc/simplex.hpp"

namespace covertbc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kChiFloor = 1e-15;         // exclude vanishing denominators
constexpr double kChiConditionWarn = 1e-9;  // flag nearly singular optima

void require_theorem_hypotheses(const Channel& legit, const Channel& warden, const char* op) {
  if (legit.num_inputs() != warden.num_inputs())
    throw DimensionMismatch("covert-capacity", op,
                            "legitimate and warden channels disagree on inputs");
  if (legit.num_inputs() < 2)
    throw OutOfRange("covert-capacity", op, "need at least two inputs");
  if (!is_absolutely_continuous(legit))
    throw AbsoluteContinuityViolation("covert-capacity", op,
                                      "legitimate rows must be absolutely continuous "
                                      "w.r.t. the no-input row");
  if (is_no_input_redundant(warden))
    throw RedundantNoInput("covert-capacity", op,
                           "warden no-input row lies in the hull of the other rows");
}

// sum_k p_k D(W_k||W_0) and chi2(sum_k p_k Q_k || Q_0) for a mixing vector p.
struct ObjectiveParts {
  std::vector<double> legit_divergences;  // D(W_k||W_0), k = 1..K
  const Channel* warden;
};

double mixture_chi_squared(const ObjectiveParts& parts, const std::vector<double>& p) {
  const Channel& warden = *parts.warden;
  const Distribution& base = warden.row(0);
  double chi2 = 0.0;
  for (std::size_t z = 0; z < warden.num_outputs(); ++z) {
    double mix = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) mix += p[k] * warden.row(k + 1)[z];
    if (base[z] == 0.0) {
      if (mix > 0.0) return kInf;
      continue;
    }
    double d = mix - base[z];
    chi2 += d * d / base[z];
  }
  return chi2;
}

double objective_value(const ObjectiveParts& parts, const std::vector<double>& p) {
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) s += p[k] * parts.legit_divergences[k];
  double chi2 = mixture_chi_squared(parts, p);
  if (!std::isfinite(chi2) || chi2 < kChiFloor) return -kInf;
  return std::sqrt(2.0) * s / std::sqrt(chi2);
}

std::vector<double> objective_gradient(const ObjectiveParts& parts, const std::vector<double>& p) {
  const Channel& warden = *parts.warden;
  const Distribution& base = warden.row(0);
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) s += p[k] * parts.legit_divergences[k];
  double chi2 = mixture_chi_squared(parts, p);
  std::vector<double> grad(p.size(), 0.0);
  if (!std::isfinite(chi2) || chi2 < kChiFloor) return grad;

  std::vector<double> chi_grad(p.size(), 0.0);
  for (std::size_t z = 0; z < warden.num_outputs(); ++z) {
    if (base[z] == 0.0) continue;
    double mix = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) mix += p[k] * warden.row(k + 1)[z];
    double common = 2.0 * (mix - base[z]) / base[z];
    for (std::size_t k = 0; k < p.size(); ++k) chi_grad[k] += common * warden.row(k + 1)[z];
  }
  double inv_sqrt_chi = 1.0 / std::sqrt(chi2);
  for (std::size_t k = 0; k < p.size(); ++k) {
    grad[k] = std::sqrt(2.0) * (parts.legit_divergences[k] * inv_sqrt_chi -
                                0.5 * s * chi_grad[k] * inv_sqrt_chi / chi2);
  }
  return grad;
}

}  // namespace

CovertCapacityResult covert_capacity_binary(const Channel& legit, const Channel& warden) {
  require_theorem_hypotheses(legit, warden, "covert_capacity_binary");
  if (legit.num_inputs() != 2)
    throw OutOfRange("covert-capacity", "covert_capacity_binary", "channel is not binary-input");
  double d = kl_divergence(legit.row(1), legit.row(0));
  double chi2;
  try {
    chi2 = chi_squared(warden.row(1), warden.row(0));
  } catch (const SupportViolation&) {
    throw AbsoluteContinuityViolation("covert-capacity", "covert_capacity_binary",
                                      "Q_1 not absolutely continuous w.r.t. Q_0");
  }
  CovertCapacityResult result;
  result.argmax_p = {1.0};
  result.zero_capacity = d <= 0.0;
  result.ill_conditioned = chi2 < kChiConditionWarn;
  result.l_star = result.zero_capacity ? 0.0 : std::sqrt(2.0 * d * d / chi2);
  return result;
}

CovertCapacityResult covert_capacity_general(const Channel& legit, const Channel& warden) {
  require_theorem_hypotheses(legit, warden, "covert_capacity_general");
  const std::size_t num_mix = legit.num_inputs() - 1;

  ObjectiveParts parts;
  parts.warden = &warden;
  parts.legit_divergences.resize(num_mix);
  bool any_positive = false;
  for (std::size_t k = 0; k < num_mix; ++k) {
    parts.legit_divergences[k] = kl_divergence(legit.row(k + 1), legit.row(0));
    if (parts.legit_divergences[k] > 0.0) any_positive = true;
  }

  CovertCapacityResult result;
  if (!any_positive) {
    result.l_star = 0.0;
    result.argmax_p.assign(num_mix, 1.0 / static_cast<double>(num_mix));
    result.zero_capacity = true;
    result.ill_conditioned = false;
    return result;
  }

  bool any_admissible = false;
  for (std::size_t k = 0; k < num_mix; ++k) {
    std::vector<double> vertex(num_mix, 0.0);
    vertex[k] = 1.0;
    if (std::isfinite(mixture_chi_squared(parts, vertex))) any_admissible = true;
  }
  if (!any_admissible)
    throw AbsoluteContinuityViolation("covert-capacity", "covert_capacity_general",
                                      "no warden row is absolutely continuous w.r.t. Q_0");

  auto fn = [&](const std::vector<double>& p) { return objective_value(parts, p); };
  auto grad = [&](const std::vector<double>& p) { return objective_gradient(parts, p); };
  SimplexMaxResult opt = maximize_on_simplex(num_mix, fn, grad);

  result.l_star = std::max(0.0, opt.value);
  result.argmax_p = opt.argmax;
  result.zero_capacity = false;
  result.ill_conditioned = mixture_chi_squared(parts, opt.argmax) < kChiConditionWarn;
  return result;
}

double covert_capacity_bsc(double crossover, const Channel& warden) {
  if (crossover < 0.0 || crossover > 0.5)
    throw OutOfRange("covert-capacity", "covert_capacity_bsc", "crossover outside [0, 1/2]");
  if (warden.num_inputs() != 2)
    throw OutOfRange("covert-capacity", "covert_capacity_bsc", "warden is not binary-input");
  if (is_no_input_redundant(warden))
    throw RedundantNoInput("covert-capacity", "covert_capacity_bsc",
                           "warden no-input row lies in the hull of the other rows");
  double chi2 = chi_squared(warden.row(1), warden.row(0));
  if (crossover == 0.5) return 0.0;
  if (crossover == 0.0) return kInf;  // noiseless channel, absolute continuity fails
  return (1.0 - 2.0 * crossover) * std::log((1.0 - crossover) / crossover) *
         std::sqrt(2.0 / chi2);
}

double covert_capacity_awgn(double noise_var, double sigma2) {
  if (!(noise_var > 0.0) || !(sigma2 > 0.0))
    throw OutOfRange("covert-capacity", "covert_capacity_awgn", "variances must be positive");
  return sigma2 / noise_var;
}

CovertCapacityResult key_stream_capacity(const Channel& warden) {
  return covert_capacity_general(warden, warden);
}

}  // namespace covertbc
