#ifndef COVERTBC_INFO_HPP
#define COVERTBC_INFO_HPP

#include <utility>
#include <vector>

#include "covertbc/channel.hpp"

namespace covertbc {

// All information measures are in nats. 0 log 0 = 0 by continuity.

/// D(p||q); returns +inf when p is not absolutely continuous w.r.t. q.
double kl_divergence(const Distribution& p, const Distribution& q);

/// Chi-squared distance sum_z (p(z)-q(z))^2 / q(z).
/// Throws SupportViolation when p puts mass outside supp(q).
double chi_squared(const Distribution& p, const Distribution& q);

/// Half L1 distance, in [0,1].
double total_variation(const Distribution& p, const Distribution& q);

double binary_entropy(double q);

/// Inverse of binary_entropy on [0, 1/2], by bisection to 1e-12.
double inv_binary_entropy(double h);

/// a*b = a(1-b) + b(1-a).
double binary_convolution(double a, double b);

double mutual_information(const Distribution& px, const Channel& ch);

/// Sparse input P_{gamma,p}: symbol 0 w.p. 1-gamma, symbol k w.p. gamma p_k.
Distribution sparse_input(double gamma, const std::vector<double>& mix_p,
                          std::size_t num_inputs);

/// I(P_{gamma,p}, ch) split as linear_term - kl_term.
struct SparseMiDecomposition {
  double linear_term;  // gamma * sum_k p_k D(Q_k || Q_0)
  double kl_term;      // D(Q_{gamma,p} || Q_0)
  double mi;           // computed independently via the double sum
};

SparseMiDecomposition sparse_mi_decomposition(double gamma, const std::vector<double>& mix_p,
                                              const Channel& ch);

/// Quadratic bracket for D(Q_{gamma,p} || Q_0) at small gamma:
/// (gamma^2/2) chi2(sum p_k Q_k || Q_0) (1 -/+ sqrt(gamma)).
std::pair<double, double> kl_sandwich(double gamma, const std::vector<double>& mix_p,
                                      const Channel& warden);

/// Lower bound max(0, 1 - sqrt(kl)) on the detection sum of the optimal test.
double detection_bounds(double kl);

/// Detection sum 1 - tv of the optimal test at total variation tv.
double detection_sum(double tv);

/// Upper-tail inverse of the standard normal CDF.
double inverse_q_function(double u);

/// Normalization constant sqrt(2) Q^{-1}((1-delta)/2) for the
/// total-variation form of the covertness constraint.
double gamma_delta(double delta);

}  // namespace covertbc

#endif
