#include "covertbc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "covertbc/capacity.hpp"
#include "covertbc/converse.hpp"
#include "covertbc/info.hpp"

namespace covertbc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream)));
}

int sample_categorical(const std::vector<double>& cdf, double u) {
  for (std::size_t i = 0; i + 1 < cdf.size(); ++i)
    if (u < cdf[i]) return static_cast<int>(i);
  return static_cast<int>(cdf.size() - 1);
}

std::vector<double> cumulative(const Distribution& d) {
  std::vector<double> cdf(d.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    acc += d[i];
    cdf[i] = acc;
  }
  return cdf;
}

void validate_config(const SimConfig& cfg, const char* op) {
  if (cfg.n < 2) throw OutOfRange("simulator", op, "n must be at least 2");
  if (cfg.trials < 1) throw OutOfRange("simulator", op, "trials must be at least 1");
  if (cfg.rho < 0.0 || cfg.rho > 1.0) throw OutOfRange("simulator", op, "rho outside [0,1]");
  if (!(cfg.rates_fraction > 0.0) || cfg.rates_fraction > 1.0)
    throw OutOfRange("simulator", op, "rates_fraction outside (0,1]");
  if (cfg.delta < 0.0) throw OutOfRange("simulator", op, "delta must be non-negative");
}

Codebook draw_codebook(const Channel& legit, const Channel& warden, long long block_len,
                       double sub_delta, double rates_fraction, std::mt19937_64& rng,
                       const char* op) {
  Codebook cb;
  cb.block_len = block_len;
  if (block_len == 0) return cb;

  CovertCapacityResult cap = covert_capacity_general(legit, warden);
  cb.mix_p = cap.argmax_p;
  if (sub_delta > 0.0) {
    WeightBudget budget = max_weight(sub_delta, block_len, warden, cb.mix_p);
    cb.alpha = std::min(1.0, budget.alpha_bar);
  }

  double exponent = rates_fraction *
                    std::sqrt(static_cast<double>(block_len) * sub_delta) * cap.l_star;
  if (exponent > std::log(static_cast<double>(kMaxCodebookSize)))
    throw CodebookTooLarge(op, "codebook target of " + std::to_string(exponent) +
                                   " nats exceeds the exact-ML limit of " +
                                   std::to_string(kMaxCodebookSize) + " codewords");
  cb.size = static_cast<long long>(std::floor(std::exp(exponent)));
  if (exponent > 0.0 && cb.size < 2)
    throw EmptyCodebook(op, "codebook target below two codewords");
  cb.size = std::max<long long>(cb.size, 1);
  cb.log_m = std::log(static_cast<double>(cb.size));

  std::vector<double> symbol_cdf(cb.mix_p.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < cb.mix_p.size(); ++k) {
    acc += cb.mix_p[k];
    symbol_cdf[k] = acc;
  }
  // Bernoulli(alpha) positions drawn by geometric gap sampling; O(weight)
  // per codeword instead of O(block_len).
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  cb.words.resize(cb.size);
  if (cb.alpha > 0.0) {
    const double log_miss = std::log1p(-std::min(cb.alpha, 1.0 - 1e-15));
    auto gap = [&] {
      double u = 1.0 - unif(rng);  // in (0, 1]
      return static_cast<long long>(std::floor(std::log(u) / log_miss));
    };
    for (auto& word : cb.words) {
      for (long long pos = gap(); pos < block_len; pos += 1 + gap()) {
        int symbol = 1 + sample_categorical(symbol_cdf, unif(rng) * acc);
        word.emplace_back(static_cast<int>(pos), symbol);
      }
    }
  }
  return cb;
}

double wilson_halfwidth(double p_hat, long long trials) {
  constexpr double z = 1.959963984540054;
  double t = static_cast<double>(trials);
  return z * std::sqrt(p_hat * (1.0 - p_hat) / t + z * z / (4.0 * t * t)) /
         (1.0 + z * z / t);
}

struct WardenTables {
  std::vector<double> llr1, llr2;  // per warden output symbol, one per sub-block
};

SimReport run_impl(const SimConfig& cfg, bool parallel) {
  validate_config(cfg, "run");
  auto [cb1, cb2] = build_codebooks(cfg);
  const Channel& w = cfg.spec.w;
  const Channel& v = cfg.spec.v;
  const Channel& warden = cfg.spec.warden;
  const long long n1 = cb1.block_len, n2 = cb2.block_len;
  const long long trials = cfg.trials;

  SimReport report;
  report.seed = cfg.seed;
  report.trials = trials;
  report.user1.log_m = cb1.log_m;
  report.user2.log_m = cb2.log_m;

  // Ensemble covertness in closed form: an i.i.d. low-weight codebook induces
  // the product distribution Q_alpha^{x block_len} on the warden.
  Distribution q0 = warden.row(0);
  auto block_kl = [&](const Codebook& cb) {
    if (cb.block_len == 0 || cb.alpha == 0.0) return 0.0;
    Distribution qa = induced_output(sparse_input(cb.alpha, cb.mix_p, warden.num_inputs()),
                                     warden);
    return static_cast<double>(cb.block_len) * kl_divergence(qa, q0);
  };
  report.exact_ensemble_kl = block_kl(cb1) + block_kl(cb2);
  report.detection_sum_bound = detection_bounds(report.exact_ensemble_kl);

  // Warden log-likelihood ratios per output symbol under the two sub-block
  // ensemble marginals.
  WardenTables tables;
  auto llr_table = [&](const Codebook& cb) {
    std::vector<double> t(warden.num_outputs(), 0.0);
    if (cb.block_len == 0) return t;
    Distribution qa = induced_output(sparse_input(cb.alpha, cb.mix_p, warden.num_inputs()),
                                     warden);
    for (std::size_t z = 0; z < t.size(); ++z)
      t[z] = qa[z] > 0.0 && q0[z] > 0.0 ? std::log(qa[z] / q0[z]) : 0.0;
    return t;
  };
  tables.llr1 = llr_table(cb1);
  tables.llr2 = llr_table(cb2);

  std::vector<std::vector<double>> w_cdf(w.num_inputs()), v_cdf(v.num_inputs()),
      z_cdf(warden.num_inputs());
  for (std::size_t x = 0; x < w.num_inputs(); ++x) w_cdf[x] = cumulative(w.row(x));
  for (std::size_t x = 0; x < v.num_inputs(); ++x) v_cdf[x] = cumulative(v.row(x));
  for (std::size_t x = 0; x < warden.num_inputs(); ++x) z_cdf[x] = cumulative(warden.row(x));

  std::vector<unsigned char> err1(trials, 0), err2(trials, 0);
  std::vector<double> lr_h1(trials, 0.0), lr_h0(trials, 0.0);

#pragma omp parallel for schedule(static) if (parallel)
  for (long long t = 0; t < trials; ++t) {
    std::mt19937_64 rng = stream_rng(cfg.seed, 0x7261696cULL + static_cast<std::uint64_t>(t));
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    long long m1 = cb1.size > 0 ? static_cast<long long>(unif(rng) * cb1.size) % cb1.size : 0;
    long long m2 = cb2.size > 0 ? static_cast<long long>(unif(rng) * cb2.size) % cb2.size : 0;

    std::vector<int> x1(n1, 0), x2(n2, 0);
    if (cb1.size > 0)
      for (auto [pos, sym] : cb1.words[m1]) x1[pos] = sym;
    if (cb2.size > 0)
      for (auto [pos, sym] : cb2.words[m2]) x2[pos] = sym;

    double llr_h1 = 0.0;
    std::vector<int> y1(n1), y2(n2);
    for (long long i = 0; i < n1; ++i) {
      y1[i] = sample_categorical(w_cdf[x1[i]], unif(rng));
      int z = sample_categorical(z_cdf[x1[i]], unif(rng));
      llr_h1 += tables.llr1[z];
    }
    for (long long i = 0; i < n2; ++i) {
      y2[i] = sample_categorical(v_cdf[x2[i]], unif(rng));
      int z = sample_categorical(z_cdf[x2[i]], unif(rng));
      llr_h1 += tables.llr2[z];
    }
    lr_h1[t] = llr_h1;

    double llr_h0 = 0.0;
    for (long long i = 0; i < n1 + n2; ++i) {
      int z = sample_categorical(z_cdf[0], unif(rng));
      llr_h0 += i < n1 ? tables.llr1[z] : tables.llr2[z];
    }
    lr_h0[t] = llr_h0;

    // Exact ML over the codebook. Only the non-zero codeword positions
    // contribute to the score difference against the all-zero word.
    auto decode = [](const Codebook& cb, const Channel& ch, const std::vector<int>& y,
                     long long truth) {
      if (cb.size <= 1) return false;
      double best = -1e300, second = -1e300;
      long long best_idx = -1;
      for (long long m = 0; m < cb.size; ++m) {
        double score = 0.0;
        for (auto [pos, sym] : cb.words[m]) {
          double p_sym = ch.row(sym)[y[pos]];
          double p_zero = ch.row(0)[y[pos]];
          score += (p_sym > 0.0 ? std::log(p_sym) : -1e30) -
                   (p_zero > 0.0 ? std::log(p_zero) : -1e30);
        }
        if (score > best) {
          second = best;
          best = score;
          best_idx = m;
        } else if (score > second) {
          second = score;
        }
      }
      return best_idx != truth || best == second;
    };
    err1[t] = cb1.size > 1 && decode(cb1, w, y1, m1) ? 1 : 0;
    err2[t] = cb2.size > 1 && decode(cb2, v, y2, m2) ? 1 : 0;
  }

  long long e1 = 0, e2 = 0, joint = 0;
  for (long long t = 0; t < trials; ++t) {
    e1 += err1[t];
    e2 += err2[t];
    joint += (err1[t] || err2[t]) ? 1 : 0;
  }
  report.user1.empirical_error = static_cast<double>(e1) / static_cast<double>(trials);
  report.user2.empirical_error = static_cast<double>(e2) / static_cast<double>(trials);
  report.joint_error = static_cast<double>(joint) / static_cast<double>(trials);
  report.user1.wilson_halfwidth = wilson_halfwidth(report.user1.empirical_error, trials);
  report.user2.wilson_halfwidth = wilson_halfwidth(report.user2.empirical_error, trials);

  // Neyman-Pearson threshold at false alarm 0.05, from the H0 sample.
  std::vector<double> sorted_h0 = lr_h0;
  std::sort(sorted_h0.begin(), sorted_h0.end());
  std::size_t idx = static_cast<std::size_t>(
      std::ceil(0.95 * static_cast<double>(trials))) - 1;
  idx = std::min(idx, sorted_h0.size() - 1);
  double threshold = sorted_h0[idx];
  long long false_alarms = 0, misses = 0;
  for (long long t = 0; t < trials; ++t) {
    if (lr_h0[t] > threshold) ++false_alarms;
    if (lr_h1[t] <= threshold) ++misses;
  }
  report.lrt_false_alarm = static_cast<double>(false_alarms) / static_cast<double>(trials);
  report.lrt_missed_detection = static_cast<double>(misses) / static_cast<double>(trials);
  report.empirical_lrt_sum = report.lrt_false_alarm + report.lrt_missed_detection;
  double pa = report.lrt_false_alarm, pm = report.lrt_missed_detection;
  report.lrt_std_error = std::sqrt(pa * (1.0 - pa) / static_cast<double>(trials) +
                                   pm * (1.0 - pm) / static_cast<double>(trials));
  return report;
}

}  // namespace

std::pair<Codebook, Codebook> build_codebooks(const SimConfig& cfg) {
  validate_config(cfg, "build_codebooks");
  const long long n1 = static_cast<long long>(std::floor(cfg.rho * static_cast<double>(cfg.n)));
  const long long n2 = cfg.n - n1;
  const double d1 = cfg.rho * cfg.delta;
  const double d2 = cfg.delta - d1;

  std::mt19937_64 rng1 = stream_rng(cfg.seed, 1);
  std::mt19937_64 rng2 = stream_rng(cfg.seed, 2);
  Codebook cb1 = draw_codebook(cfg.spec.w, cfg.spec.warden, n1, d1, cfg.rates_fraction, rng1,
                               "build_codebooks");
  Codebook cb2 = draw_codebook(cfg.spec.v, cfg.spec.warden, n2, d2, cfg.rates_fraction, rng2,
                               "build_codebooks");
  return {std::move(cb1), std::move(cb2)};
}

SimReport run(const SimConfig& cfg) { return run_impl(cfg, true); }

SimReport run_serial(const SimConfig& cfg) { return run_impl(cfg, false); }

std::vector<SweepRow> sweep(const SimConfig& cfg, const std::vector<long long>& n_list) {
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw OutOfRange("simulator", "sweep", "n_list must be increasing");

  CovertCapacityResult cap1 = covert_capacity_general(cfg.spec.w, cfg.spec.warden);
  CovertCapacityResult cap2 = covert_capacity_general(cfg.spec.v, cfg.spec.warden);

  std::vector<SweepRow> rows;
  rows.reserve(n_list.size());
  for (long long n : n_list) {
    SimConfig sub = cfg;
    sub.n = n;
    SimReport rep = run(sub);
    SweepRow row;
    row.n = n;
    row.log_m_total = rep.user1.log_m + rep.user2.log_m;
    double scale = std::sqrt(static_cast<double>(n) * cfg.delta);
    row.normalized_sum = scale > 0.0 ? row.log_m_total / scale : 0.0;
    row.share_sum = 0.0;
    if (scale > 0.0) {
      if (cap1.l_star > 0.0) row.share_sum += rep.user1.log_m / scale / cap1.l_star;
      if (cap2.l_star > 0.0) row.share_sum += rep.user2.log_m / scale / cap2.l_star;
    }
    row.error = rep.joint_error;
    row.kl = rep.exact_ensemble_kl;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace covertbc
