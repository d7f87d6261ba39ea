// Acceptance suite: one line per criterion, exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "covertbc/capacity.hpp"
#include "covertbc/condition.hpp"
#include "covertbc/converse.hpp"
#include "covertbc/info.hpp"
#include "covertbc/region.hpp"
#include "covertbc/sim.hpp"

using namespace covertbc;

namespace {

int g_failures = 0;

void report(const std::string& id, bool passed, const std::string& detail) {
  std::printf("[%s] criterion %s: %s\n", passed ? "PASS" : "FAIL", id.c_str(),
              detail.c_str());
  if (!passed) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Channel random_binary_channel(std::mt19937_64& rng, double min_gap = 0.02) {
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  double a = unif(rng), b = unif(rng);
  while (std::abs(a - b) < min_gap) b = unif(rng);
  return validate_channel({{1 - a, a}, {1 - b, b}});
}

// --- criterion 1: covert-capacity cross-validation --------------------------

void criterion_1() {
  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  double max_gap = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Channel legit = random_binary_channel(rng);
    Channel warden = random_binary_channel(rng);
    double general = covert_capacity_general(legit, warden).l_star;
    double binary = covert_capacity_binary(legit, warden).l_star;
    max_gap = std::max(max_gap, std::abs(general - binary));
  }
  double worked = covert_capacity_binary(bsc(0.1), bsc(0.3)).l_star;
  double worked_gap = std::abs(worked - 2.847927);
  double elapsed = seconds_since(start);
  bool pass = max_gap < 1e-6 && worked_gap < 1e-5 && elapsed < 10.0;
  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "general vs binary max gap %.3g (tol 1e-6), worked pair L*=%.6f gap %.3g "
                "(tol 1e-5), %.2fs (< 10s)",
                max_gap, worked, worked_gap, elapsed);
  report("1 capacity cross-validation", pass, detail);
}

// --- criterion 2: corollary reproduction ------------------------------------

void criterion_2() {
  std::mt19937_64 rng(1002);
  std::uniform_real_distribution<double> crossover(0.02, 0.48);
  double max_gap = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    double p = crossover(rng);
    Channel warden = random_binary_channel(rng);
    double closed = covert_capacity_bsc(p, warden);
    double formula = covert_capacity_binary(bsc(p), warden).l_star;
    max_gap = std::max(max_gap, std::abs(closed - formula));
  }
  bool gauss_exact = covert_capacity_awgn(1.0, 1.5) == 1.5 &&
                     covert_capacity_awgn(2.0, 1.5) == 0.75 &&
                     covert_capacity_awgn(4.0, 1.0) == 0.25;
  bool pass = max_gap < 1e-9 && gauss_exact;
  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "BSC closed form vs binary formula max gap %.3g (tol 1e-9), "
                "AWGN sigma2/N exact: %s",
                max_gap, gauss_exact ? "yes" : "no");
  report("2 corollary reproduction", pass, detail);
}

// --- criterion 3: condition map, qualitative --------------------------------

void criterion_3() {
  auto start = std::chrono::steady_clock::now();
  Channel warden = bsc(0.3);  // documented stand-in warden
  bool diagonal_ok = true, both_kinds = true;
  for (double p : {0.01, 0.20}) {
    ConditionMap map = condition_map(bsc(p), warden, 0.02);
    int satisfied = 0, unsatisfied = 0;
    for (std::size_t i = 0; i < map.q_values.size(); ++i) {
      for (std::size_t j = 0; j < map.q_values.size(); ++j) {
        if (map.cells[i][j] == CellVerdict::Satisfied) ++satisfied;
        if (map.cells[i][j] == CellVerdict::Unsatisfied) ++unsatisfied;
      }
      if (map.cells[i][i] == CellVerdict::Unsatisfied) diagonal_ok = false;
    }
    if (satisfied == 0 || unsatisfied == 0) both_kinds = false;
  }
  double elapsed = seconds_since(start);
  bool pass = diagonal_ok && both_kinds && elapsed < 60.0;
  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "0.02-step maps for BSC(0.01) and BSC(0.20): diagonal satisfied %s, both "
                "verdicts present %s, %.2fs (< 60s)",
                diagonal_ok ? "yes" : "no", both_kinds ? "yes" : "no", elapsed);
  report("3 condition map", pass, detail);
}

// --- criterion 4: BSC pairs satisfy the condition ----------------------------

void criterion_4() {
  Channel warden = bsc(0.3);
  int checked = 0, satisfied = 0;
  for (int i = 1; i <= 9; ++i) {
    for (int j = 1; j <= 9; ++j) {
      double p1 = 0.05 * i, p2 = 0.05 * j;
      BroadcastSpec spec = make_broadcast_spec(bsc(p1), bsc(p2), warden);
      ++checked;
      if (check_condition_binary(spec).satisfied) ++satisfied;
    }
  }
  bool pass = satisfied == checked;
  char detail[128];
  std::snprintf(detail, sizeof(detail), "%d/%d BSC pairs p in {0.05..0.45} satisfied",
                satisfied, checked);
  report("4 BSC-pair theorem check", pass, detail);
}

// --- criterion 5: converse meets achievability ------------------------------

void criterion_5() {
  auto start = std::chrono::steady_clock::now();
  BroadcastSpec spec = make_broadcast_spec(bsc(0.1), bsc(0.2), bsc(0.3));
  double l1 = covert_capacity_binary(spec.w, spec.warden).l_star;

  bool decreasing = true, within5 = false, envelope_ok = true;
  double previous = 1e100, final_normalized = 0.0;
  for (long long n : {10000LL, 1000000LL, 100000000LL}) {
    WeightBudget budget = max_weight(1.0, n, spec.warden, {1.0});
    ConverseBound bound = lambda_sum_bound(spec, budget);
    if (bound.envelope_term > 1e-9) envelope_ok = false;
    if (bound.normalized >= previous) decreasing = false;
    previous = bound.normalized;
    final_normalized = bound.normalized;
  }
  within5 = std::abs(final_normalized - l1) / l1 < 0.05;

  // Envelope non-positivity across condition-passing BSC pairs.
  for (int i = 1; i <= 9 && envelope_ok; ++i) {
    for (int j = 1; j <= 9 && envelope_ok; ++j) {
      BroadcastSpec pair = make_broadcast_spec(bsc(0.05 * i), bsc(0.05 * j), bsc(0.3));
      WeightBudget budget = max_weight(1.0, 1000000, pair.warden, {1.0});
      try {
        if (lambda_sum_bound(pair, budget).envelope_term > 1e-9) envelope_ok = false;
      } catch (const ConditionViolated&) {
        envelope_ok = false;
      }
    }
  }
  double elapsed = seconds_since(start);
  bool pass = decreasing && within5 && envelope_ok && elapsed < 30.0;
  char detail[320];
  std::snprintf(detail, sizeof(detail),
                "normalized at n=1e8 is %.6f vs L1*=%.6f (%.2f%%, tol 5%%), decreasing %s, "
                "envelope term <= 1e-9 on 81 BSC pairs %s, %.2fs (< 30s)",
                final_normalized, l1, 100.0 * std::abs(final_normalized - l1) / l1,
                decreasing ? "yes" : "no", envelope_ok ? "yes" : "no", elapsed);
  report("5 converse meets achievability", pass, detail);
}

// --- criterion 6: lemma suite ------------------------------------------------

void criterion_6() {
  std::mt19937_64 rng(1006);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> mix_size(1, 4), out_size(2, 5);

  double max_residual = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t k = mix_size(rng);
    std::size_t outs = out_size(rng);
    std::vector<std::vector<double>> rows(k + 1, std::vector<double>(outs));
    for (auto& row : rows) {
      double sum = 0.0;
      for (double& x : row) {
        x = unif(rng) + 0.05;
        sum += x;
      }
      for (double& x : row) x /= sum;
    }
    Channel ch = validate_channel(rows);
    std::vector<double> mix(k);
    double sum = 0.0;
    for (double& x : mix) {
      x = unif(rng) + 1e-3;
      sum += x;
    }
    for (double& x : mix) x /= sum;
    SparseMiDecomposition d = sparse_mi_decomposition(unif(rng), mix, ch);
    max_residual = std::max(max_residual, std::abs(d.mi - (d.linear_term - d.kl_term)));
  }
  bool identity_ok = max_residual < 1e-12;

  bool sandwich_ok = true;
  double worst_margin = 1.0;
  for (int trial = 0; trial < 50; ++trial) {
    Channel warden = random_binary_channel(rng, 0.05);
    for (double gamma : {1e-5, 1e-4, 5e-4, 1e-3}) {
      auto [lo, hi] = kl_sandwich(gamma, {1.0}, warden);
      Distribution mixed = induced_output(sparse_input(gamma, {1.0}, 2), warden);
      double d = kl_divergence(mixed, warden.row(0));
      if (d < lo || d > hi) sandwich_ok = false;
      double width = hi - lo;
      if (width > 0.0)
        worst_margin = std::min(worst_margin, std::min(d - lo, hi - d) / width);
    }
  }

  bool gerber_ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    int m = 2 + static_cast<int>(unif(rng) * 4);
    double h_cond = 0.0, h_noisy = 0.0, total = 0.0;
    double p = 0.5 * unif(rng);
    std::vector<double> pu(m), x(m);
    for (int u = 0; u < m; ++u) {
      pu[u] = unif(rng) + 1e-3;
      total += pu[u];
      x[u] = unif(rng);
    }
    for (int u = 0; u < m; ++u) {
      pu[u] /= total;
      h_cond += pu[u] * binary_entropy(x[u]);
      h_noisy += pu[u] * binary_entropy(binary_convolution(x[u], p));
    }
    auto [lhs, rhs] = mrs_gerber_check(std::min(h_cond, std::log(2.0)), p);
    (void)rhs;
    if (lhs > h_noisy + 1e-12) gerber_ok = false;
  }

  bool taylor_ok = true;
  std::uniform_real_distribution<double> qdist(0.05, 0.45);
  for (int trial = 0; trial < 100; ++trial) {
    double q = qdist(rng);
    double slope = std::log((1.0 - q) / q) * (1.0 - 2.0 * q);
    double edge = q - (1.0 - 2.0 * q) * 1e-3;
    double c = (1.0 - 2.0 * q) * (1.0 - 2.0 * q) / (2.0 * edge * (1.0 - edge));
    for (double xi : {1e-5, 1e-4, 1e-3}) {
      double remainder =
          binary_entropy(binary_convolution(q, xi)) - binary_entropy(q) - slope * xi;
      if (std::abs(remainder) > c * xi * xi + 1e-15) taylor_ok = false;
    }
  }

  bool pass = identity_ok && sandwich_ok && gerber_ok && taylor_ok;
  char detail[320];
  std::snprintf(detail, sizeof(detail),
                "sparse identity max residual %.3g (tol 1e-12); sandwich holds to gamma=1e-3 "
                "%s (tightest interior margin %.3f of width); Mrs. Gerber %s; Taylor %s",
                max_residual, sandwich_ok ? "yes" : "no", worst_margin,
                gerber_ok ? "yes" : "no", taylor_ok ? "yes" : "no");
  report("6 lemma suite", pass, detail);
}

// --- criterion 7: region and keys --------------------------------------------

void criterion_7() {
  BroadcastSpec spec = make_broadcast_spec(bsc(0.1), bsc(0.2), bsc(0.3));
  double l1 = covert_capacity_binary(spec.w, spec.warden).l_star;
  double l2 = covert_capacity_binary(spec.v, spec.warden).l_star;
  double lz = key_stream_capacity(spec.warden).l_star;
  RegionSpec region = make_region({l1, l2});

  bool shares_exact = true, keys_ok = true, plans_ok = true;
  auto points = boundary(region, 33);  // dyadic resolution: exact share sums
  for (const auto& point : points) {
    double sum = 0.0;
    for (double s : point.shares) sum += s;
    if (sum != 1.0) shares_exact = false;

    double key = min_key_rate(point.rates[0], point.rates[1], region, lz);
    double expected = std::max(0.0, lz - point.rates[0] - point.rates[1]);
    if (std::abs(key - expected) > 1e-9) keys_ok = false;

    TimeDivisionPlan plan =
        time_division_plan(point.rates[0], point.rates[1], 0.02, 10000, region);
    double scale = std::sqrt(10000.0 * 0.02);
    double target_share =
        plan.log_m_targets.first / (scale * l1) + plan.log_m_targets.second / (scale * l2);
    if (std::abs(target_share - 1.0) > 1e-9) plans_ok = false;
  }
  bool pass = shares_exact && keys_ok && plans_ok;
  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "33-point boundary: share sums exact %s; min key rate equals "
                "max(0, Lz*-L1-L2) %s; plan targets on the boundary to 1e-9 %s",
                shares_exact ? "yes" : "no", keys_ok ? "yes" : "no",
                plans_ok ? "yes" : "no");
  report("7 region and keys", pass, detail);
}

// --- criterion 8: simulator at the stated parameters --------------------------

void criterion_8() {
#ifdef _OPENMP
  int saved_threads = omp_get_max_threads();
  omp_set_num_threads(1);  // the criterion budget is single-threaded
#endif
  auto start = std::chrono::steady_clock::now();

  SimConfig cfg;
  cfg.spec = make_broadcast_spec(bsc(0.1), bsc(0.2), bsc(0.3));
  cfg.n = 10000;
  cfg.delta = 1.0;
  cfg.rho = 0.5;
  cfg.rates_fraction = 0.3;
  cfg.trials = 10000;
  cfg.seed = 2024;

  // As stated: delta = 1 asks for exp(0.3 sqrt(n_j delta_j) L_j*) ~ e^42.7
  // codewords per user, far beyond any materializable exact-ML codebook.
  bool stated_ran = false;
  std::string failure_reason;
  try {
    SimReport report_stated = run(cfg);
    stated_ran = report_stated.user1.empirical_error < 0.1 &&
                 report_stated.exact_ensemble_kl <= cfg.delta + 1e-9;
  } catch (const Error& e) {
    failure_reason = std::string(e.name()) + ": " + e.what();
  }
  report("8 simulator at stated parameters (n=1e4, delta=1, rf=0.3)", stated_ran,
         stated_ran ? "ran as stated"
                    : failure_reason + " -- the stated budget requires ~e^42.7 codewords "
                                       "per user; see the notes ledger for the analysis");

  // Supplementary demonstration at the feasible desk-scale budget delta=0.02
  // (the time-division example budget; codebooks stay under 2^18 words).
  cfg.delta = 0.02;
  cfg.trials = 10000;
  bool supp_ok = true;
  char detail[512];
  try {
    SimReport rep = run(cfg);
    bool err_ok = rep.user1.empirical_error < 0.1 && rep.user2.empirical_error < 0.1;
    bool kl_ok = rep.exact_ensemble_kl <= cfg.delta + 1e-9;
    bool warden_ok = rep.empirical_lrt_sum >=
                     1.0 - std::sqrt(cfg.delta) - 3.0 * rep.lrt_std_error;

    SimConfig sweep_cfg = cfg;
    sweep_cfg.trials = 2000;
    auto rows = sweep(sweep_cfg, {2500, 10000, 40000});
    bool scaling_ok = true;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      double growth = rows[i].log_m_total / rows[i - 1].log_m_total;
      if (std::abs(growth - 2.0) > 0.3) scaling_ok = false;
    }
    double elapsed = seconds_since(start);
    supp_ok = err_ok && kl_ok && warden_ok && scaling_ok && elapsed < 300.0;
    std::snprintf(detail, sizeof(detail),
                  "delta=0.02, trials=1e4: errors (%.4f, %.4f) < 0.1 (Wilson hw %.4f/%.4f); "
                  "exact KL %.6f <= 0.02; detection sum %.4f >= 1-sqrt(delta)-3se=%.4f; "
                  "sweep log M growth per 4x n: %.3f, %.3f (tol 15%%); %.1fs single-threaded "
                  "(< 300s)",
                  rep.user1.empirical_error, rep.user2.empirical_error,
                  rep.user1.wilson_halfwidth, rep.user2.wilson_halfwidth,
                  rep.exact_ensemble_kl, rep.empirical_lrt_sum,
                  1.0 - std::sqrt(cfg.delta) - 3.0 * rep.lrt_std_error,
                  rows[1].log_m_total / rows[0].log_m_total,
                  rows[2].log_m_total / rows[1].log_m_total, elapsed);
  } catch (const Error& e) {
    supp_ok = false;
    std::snprintf(detail, sizeof(detail), "unexpected failure: %s", e.what());
  }
  report("8s simulator supplementary (documented feasible budget)", supp_ok, detail);

#ifdef _OPENMP
  omp_set_num_threads(saved_threads);
#endif
}

}  // namespace

int main() {
  std::printf("== acceptance suite ==\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  std::printf("== %d criterion(s) failed ==\n", g_failures);
  return g_failures;
}
