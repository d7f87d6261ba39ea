#ifndef COVERTBC_SIM_HPP
#define COVERTBC_SIM_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "covertbc/channel.hpp"

namespace covertbc {

/// Exact ML decoding is capped at this many codewords per user.
inline constexpr long long kMaxCodebookSize = 1LL << 20;

struct SimConfig {
  BroadcastSpec spec;
  long long n;                 // blocklength
  double delta;                // covertness budget, nats
  double rho;                  // time share for receiver 1
  double rates_fraction;       // back-off from the capacity targets, (0,1]
  long long trials;
  std::uint64_t seed;
  bool unlimited_key = true;   // codebook doubles as shared secret randomness
};

/// Random sparse codebook for one sub-block. Codewords are stored as
/// (position, symbol) pairs; unlisted positions carry the no-input symbol.
struct Codebook {
  long long size = 0;      // number of messages, 0 for an empty sub-block
  long long block_len = 0;
  double alpha = 0.0;      // per-symbol communication weight
  std::vector<double> mix_p;
  double log_m = 0.0;      // nats
  std::vector<std::vector<std::pair<int, int>>> words;
};

/// Draws the two per-user codebooks from i.i.d. low-weight inputs with the
/// weights given by the per-sub-block covertness budgets. Deterministic in
/// cfg.seed.
std::pair<Codebook, Codebook> build_codebooks(const SimConfig& cfg);

struct UserReport {
  double log_m = 0.0;
  double empirical_error = 0.0;
  double wilson_halfwidth = 0.0;  // 95% interval
};

struct SimReport {
  UserReport user1, user2;
  double joint_error = 0.0;          // either decoder wrong
  double exact_ensemble_kl = 0.0;    // nats, closed form, not estimated
  double detection_sum_bound = 0.0;  // max(0, 1 - sqrt(kl))
  double empirical_lrt_sum = 0.0;    // pi_{1|0} + pi_{0|1} at the NP threshold
  double lrt_false_alarm = 0.0;
  double lrt_missed_detection = 0.0;
  double lrt_std_error = 0.0;
  std::uint64_t seed = 0;
  long long trials = 0;
};

/// Monte Carlo of the time-division scheme: ML decoding per user, exact
/// ensemble covertness accounting, and the warden's likelihood-ratio test at
/// false-alarm 0.05. Trials run in parallel; identical seeds give
/// bit-identical reports.
SimReport run(const SimConfig& cfg);

/// Single-threaded reference; identical output to run().
SimReport run_serial(const SimConfig& cfg);

struct SweepRow {
  long long n;
  double log_m_total;    // nats
  double normalized_sum; // log_m_total / sqrt(n delta)
  double share_sum;      // sum_j (log_m_j / sqrt(n delta)) / L_j*
  double error;          // joint error rate
  double kl;             // exact ensemble KL
};

std::vector<SweepRow> sweep(const SimConfig& cfg, const std::vector<long long>& n_list);

}  // namespace covertbc

#endif
