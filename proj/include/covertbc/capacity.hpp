#ifndef COVERTBC_CAPACITY_HPP
#define COVERTBC_CAPACITY_HPP

#include <vector>

#include "covertbc/channel.hpp"

namespace covertbc {

struct CovertCapacityResult {
  double l_star;                 // nats per sqrt(channel use)
  std::vector<double> argmax_p;  // mixing vector over inputs {1..K}
  bool zero_capacity;            // every D(W_k || W_0) vanishes
  bool ill_conditioned;          // chi-squared at the optimum below 1e-9
};

/// Binary-input closed form sqrt(2 D(W_1||W_0)^2 / chi2(Q_1||Q_0)).
CovertCapacityResult covert_capacity_binary(const Channel& legit, const Channel& warden);

/// Simplex maximization of sqrt(2 (sum_k p_k D(W_k||W_0))^2 /
/// chi2(sum_k p_k Q_k || Q_0)), grid-certified projected gradient ascent.
CovertCapacityResult covert_capacity_general(const Channel& legit, const Channel& warden);

/// Closed form (1-2p) ln((1-p)/p) sqrt(2/chi2(Q_1||Q_0)) for a BSC(p) with
/// the given binary warden.
double covert_capacity_bsc(double crossover, const Channel& warden);

/// sigma2 / noise_var, in nats per sqrt(channel use).
double covert_capacity_awgn(double noise_var, double sigma2);

/// Capacity of the channel whose legitimate output equals the warden output.
CovertCapacityResult key_stream_capacity(const Channel& warden);

}  // namespace covertbc

#endif
