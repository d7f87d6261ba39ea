#ifndef COVERTBC_CONVERSE_HPP
#define COVERTBC_CONVERSE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "covertbc/channel.hpp"

namespace covertbc {

/// Covertness weight budget: alpha_bar^2 = 2 delta / (chi2 * n) for the
/// mixture sum_k mix_p[k] Q_k against Q_0.
struct WeightBudget {
  double alpha_bar;
  long long n;
  double delta;               // nats
  std::vector<double> mix_p;  // over inputs {1..K}
};

WeightBudget max_weight(double delta, long long n, const Channel& warden,
                        const std::vector<double>& mix_p);

/// Gaussian analogue: alpha_bar = 2 sigma2 sqrt(delta/n), in power units.
WeightBudget max_weight_gaussian(double delta, long long n, double sigma2);

/// Largest admissible relative weight: the root of a^2 (1 - sqrt(a)) =
/// alpha_bar^2, clamped to [alpha_bar, 1].
double admissible_weight_root(double alpha_bar);

/// Piecewise-linear upper concave envelope of sampled points.
struct EnvelopeFn {
  std::vector<std::pair<double, double>> knots;  // sorted by x

  double operator()(double x) const;
  double max_value() const;
};

/// Upper convex hull of the samples; exact on the sampled lattice.
/// Throws TooFewSamples for fewer than two points.
EnvelopeFn upper_concave_envelope(std::vector<std::pair<double, double>> samples);

struct ConverseBound {
  double lambda;         // L_dom^* / L_weak^*, >= 1
  double bound_nats;     // upper bound on (log M_1 + lambda log M_2) / n
  double normalized;     // bound_nats * sqrt(n / delta)
  double envelope_term;  // max of the concave-envelope summand over the grid
};

/// Outer bound on the lambda-weighted throughput sum over weight-constrained
/// sparse inputs: max_alpha lambda I(P_alpha, V_weak) + env[I(., W_dom) -
/// lambda I(., V_weak)](alpha). Throws ConditionViolated when the envelope
/// term is positive beyond 1e-9.
ConverseBound lambda_sum_bound(const BroadcastSpec& spec, const WeightBudget& budget);

/// First-order converse frontier for a BSC pair: pairs
/// (c1 t, c2 (a - t)) with c_j = (1-2p_j) ln((1-p_j)/p_j) and a = alpha_bar
/// sqrt(n), swept over t in [0, a].
std::vector<std::pair<double, double>> bsc_converse_region(double p1, double p2,
                                                           const WeightBudget& budget,
                                                           std::size_t resolution = 129);

/// Gaussian frontier: pairs (tau/(2 N1), (alpha - tau)/(2 N2)) over
/// tau in [0, alpha] with alpha = budget.alpha_bar in power units.
std::vector<std::pair<double, double>> gaussian_converse_region(double n1, double n2,
                                                                double sigma2,
                                                                const WeightBudget& budget,
                                                                std::size_t resolution = 129);

/// Returns (h_b(h_b^{-1}(h) * p), h) so callers can assert the binary-entropy
/// convexity inequality on conditional-entropy instances.
std::pair<double, double> mrs_gerber_check(double h, double p);

}  // namespace covertbc

#endif
