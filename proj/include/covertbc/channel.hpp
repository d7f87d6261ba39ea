#ifndef COVERTBC_CHANNEL_HPP
#define COVERTBC_CHANNEL_HPP

#include <cstddef>
#include <vector>

#include "covertbc/errors.hpp"

namespace covertbc {

// Row sums are accepted within this tolerance and then renormalized.
inline constexpr double kStochasticTol = 1e-9;
// Tolerance used for exact numerical identities throughout the library.
inline constexpr double kIdentityTol = 1e-12;

/// Probability vector over a finite alphabet. Entries are >= 0 and sum to 1.
struct Distribution {
  std::vector<double> p;

  std::size_t size() const { return p.size(); }
  double operator[](std::size_t i) const { return p[i]; }
};

/// Builds a Distribution, rejecting negative entries and sums outside
/// 1 +/- kStochasticTol. Accepted vectors are renormalized exactly.
Distribution make_distribution(std::vector<double> probs, const char* op = "make_distribution");

Distribution bernoulli(double prob_of_one);
Distribution point_mass(std::size_t index, std::size_t alphabet_size);

/// Row-stochastic transition matrix. Row x is the output distribution given
/// input x; row 0 is the designated no-input row.
struct Channel {
  std::vector<Distribution> rows;

  std::size_t num_inputs() const { return rows.size(); }
  std::size_t num_outputs() const { return rows.empty() ? 0 : rows[0].size(); }
  const Distribution& row(std::size_t x) const { return rows[x]; }
};

/// Validates a raw matrix into a Channel. Throws NonStochasticRow if any row
/// has a negative entry or a sum outside 1 +/- 1e-9.
Channel validate_channel(const std::vector<std::vector<double>>& matrix);

Channel bsc(double crossover);

/// True iff row_k(y) = 0 whenever row_0(y) = 0, for every k != 0.
bool is_absolutely_continuous(const Channel& ch);

/// True iff the no-input row Q_0 lies in the convex hull of the other rows,
/// decided by minimizing ||sum_k p_k Q_k - Q_0||^2 over the simplex.
bool is_no_input_redundant(const Channel& warden);

/// Output marginal of px pushed through ch.
Distribution induced_output(const Distribution& px, const Channel& ch);

struct PruneReport {
  std::vector<std::size_t> dropped_inputs;
  std::vector<std::size_t> dropped_warden_outputs;
  bool any() const { return !dropped_inputs.empty() || !dropped_warden_outputs.empty(); }
};

/// Two legitimate channels plus the warden channel on one input alphabet.
/// Construct through make_broadcast_spec so the support pruning runs.
struct BroadcastSpec {
  Channel w;       // receiver 1
  Channel v;       // receiver 2
  Channel warden;  // adversary
  PruneReport pruning;

  std::size_t num_inputs() const { return w.num_inputs(); }
};

/// Validates input-alphabet agreement, drops warden output symbols outside
/// supp(Q_0) and input symbols whose warden row leaks outside supp(Q_0),
/// and reports what was pruned. Input 0 is never dropped; afterwards
/// supp(Q_0) spans the whole warden output alphabet.
BroadcastSpec make_broadcast_spec(Channel w, Channel v, Channel warden);

/// AWGN broadcast parameters: Y_j = X + noise(N_j), Z = X + noise(sigma2).
struct GaussianBroadcastSpec {
  double n1;
  double n2;
  double sigma2;
};

GaussianBroadcastSpec make_gaussian_spec(double n1, double n2, double sigma2);

}  // namespace covertbc

#endif
