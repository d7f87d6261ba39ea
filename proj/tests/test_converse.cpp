#include <doctest.h>

#include <cmath>
#include <random>

#include "covertbc/capacity.hpp"
#include "covertbc/converse.hpp"
#include "covertbc/info.hpp"

using namespace covertbc;

namespace {

BroadcastSpec bsc_spec(double p1, double p2, double q) {
  return make_broadcast_spec(bsc(p1), bsc(p2), bsc(q));
}

// Differential entropy of a two-component Gaussian mixture by Simpson rule.
double mixture_entropy(double weight, double mean, double variance) {
  double sigma = std::sqrt(variance);
  double lo = std::min(0.0, mean) - 10.0 * sigma;
  double hi = std::max(0.0, mean) + 10.0 * sigma;
  const int steps = 8000;  // even
  double h = (hi - lo) / steps;
  auto density = [&](double x) {
    auto normal = [&](double m) {
      return std::exp(-0.5 * (x - m) * (x - m) / variance) /
             std::sqrt(2.0 * M_PI * variance);
    };
    return (1.0 - weight) * normal(0.0) + weight * normal(mean);
  };
  auto integrand = [&](double x) {
    double f = density(x);
    return f > 1e-300 ? -f * std::log(f) : 0.0;
  };
  double sum = integrand(lo) + integrand(hi);
  for (int i = 1; i < steps; ++i) sum += integrand(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("max weight budgets") {
  WeightBudget budget = max_weight(1.0, 10000, bsc(0.3), {1.0});
  CHECK(budget.alpha_bar == doctest::Approx(0.0162019).epsilon(1e-5));
  // Invariant: alpha_bar^2 = 2 delta / (chi2 n).
  double chi2 = chi_squared(bernoulli(0.7), bernoulli(0.3));
  CHECK(budget.alpha_bar * budget.alpha_bar ==
        doctest::Approx(2.0 / (chi2 * 10000.0)).epsilon(1e-12));

  WeightBudget quadrupled = max_weight(1.0, 40000, bsc(0.3), {1.0});
  CHECK(quadrupled.alpha_bar == doctest::Approx(0.5 * budget.alpha_bar).epsilon(1e-12));

  WeightBudget gauss = max_weight_gaussian(1.0, 10000, 1.0);
  CHECK(gauss.alpha_bar == doctest::Approx(0.02).epsilon(1e-12));

  Channel redundant = validate_channel({{0.3, 0.7}, {0.3, 0.7}});
  CHECK_THROWS_AS(max_weight(1.0, 100, redundant, {1.0}), RedundantNoInput);
  CHECK_THROWS_AS(max_weight(0.0, 100, bsc(0.3), {1.0}), OutOfRange);
}

TEST_CASE("admissible weight root solves the cubic constraint") {
  for (double abar : {1e-4, 1e-3, 1e-2, 0.05}) {
    double root = admissible_weight_root(abar);
    CHECK(root >= abar);
    CHECK(root * root * (1.0 - std::sqrt(root)) == doctest::Approx(abar * abar).epsilon(1e-10));
  }
  CHECK(admissible_weight_root(0.0) == 0.0);
}

TEST_CASE("concave envelope of concave samples is the samples") {
  std::vector<std::pair<double, double>> samples;
  for (int i = 0; i <= 100; ++i) {
    double x = static_cast<double>(i) / 100.0;
    samples.push_back({x, binary_entropy(x)});
  }
  EnvelopeFn env = upper_concave_envelope(samples);
  CHECK(env.knots.size() == samples.size());
  for (const auto& [x, y] : samples) CHECK(env(x) == doctest::Approx(y).epsilon(1e-12));
}

TEST_CASE("concave envelope of a convex function is the chord") {
  std::vector<std::pair<double, double>> samples;
  for (int i = 0; i <= 64; ++i) {
    double x = static_cast<double>(i) / 64.0;
    samples.push_back({x, x * x});
  }
  EnvelopeFn env = upper_concave_envelope(samples);
  CHECK(env.knots.size() == 2);
  for (double x : {0.0, 0.25, 0.5, 0.8, 1.0}) CHECK(env(x) == doctest::Approx(x).epsilon(1e-12));
}

TEST_CASE("envelope monotonicity and dominance") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::pair<double, double>> f1, f2;
  for (int i = 0; i <= 50; ++i) {
    double x = static_cast<double>(i) / 50.0;
    double base = unif(rng);
    f1.push_back({x, base});
    f2.push_back({x, base + unif(rng)});  // f2 >= f1 pointwise
  }
  EnvelopeFn g1 = upper_concave_envelope(f1);
  EnvelopeFn g2 = upper_concave_envelope(f2);
  for (int i = 0; i <= 50; ++i) {
    double x = static_cast<double>(i) / 50.0;
    CHECK(g2(x) >= g1(x) - 1e-12);
    CHECK(g1(x) >= f1[i].second - 1e-12);  // dominance
  }
  // Slopes non-increasing across knots.
  for (std::size_t k = 2; k < g1.knots.size(); ++k) {
    auto [x0, y0] = g1.knots[k - 2];
    auto [x1, y1] = g1.knots[k - 1];
    auto [x2, y2] = g1.knots[k];
    CHECK((y1 - y0) / (x1 - x0) >= (y2 - y1) / (x2 - x1) - 1e-9);
  }

  CHECK_THROWS_AS(upper_concave_envelope({{0.0, 1.0}}), TooFewSamples);
  CHECK_THROWS_AS(upper_concave_envelope({{0.5, 1.0}, {0.5, 2.0}}), OutOfRange);
}

TEST_CASE("lambda sum bound zero budget") {
  BroadcastSpec spec = bsc_spec(0.1, 0.2, 0.3);
  WeightBudget budget{0.0, 10000, 1.0, {1.0}};
  ConverseBound bound = lambda_sum_bound(spec, budget);
  CHECK(bound.bound_nats == 0.0);
  CHECK(bound.normalized == 0.0);
}

TEST_CASE("identical receivers give a vanishing envelope term") {
  BroadcastSpec spec = bsc_spec(0.15, 0.15, 0.3);
  WeightBudget budget = max_weight(1.0, 100000, spec.warden, {1.0});
  ConverseBound bound = lambda_sum_bound(spec, budget);
  CHECK(bound.lambda == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(bound.envelope_term <= 1e-12);
  CHECK(bound.envelope_term >= -1e-12);  // inner function is identically zero

  // The bound then equals max over alpha of I(P_alpha, V).
  double alpha_max = std::min(1.0, admissible_weight_root(budget.alpha_bar));
  double direct = mutual_information(sparse_input(alpha_max, {1.0}, 2), spec.v);
  CHECK(bound.bound_nats == doctest::Approx(direct).epsilon(1e-9));
}

TEST_CASE("normalized bound approaches the capacity line from above") {
  BroadcastSpec spec = bsc_spec(0.1, 0.2, 0.3);
  double l1 = covert_capacity_binary(spec.w, spec.warden).l_star;

  double previous = 1e9;
  for (long long n : {10000LL, 1000000LL, 100000000LL}) {
    WeightBudget budget = max_weight(1.0, n, spec.warden, {1.0});
    ConverseBound bound = lambda_sum_bound(spec, budget);
    CHECK(bound.envelope_term <= 1e-9);
    CHECK(bound.normalized < previous);
    CHECK(bound.normalized >= l1 - 1e-9);  // outer bound stays above the line
    previous = bound.normalized;
    if (n == 100000000LL) CHECK(std::abs(bound.normalized - l1) / l1 < 0.05);
  }
}

TEST_CASE("envelope term is non-positive for condition-passing specs") {
  for (double p1 : {0.05, 0.15, 0.3}) {
    for (double p2 : {0.1, 0.25, 0.45}) {
      BroadcastSpec spec = bsc_spec(p1, p2, 0.3);
      WeightBudget budget = max_weight(1.0, 1000000, spec.warden, {1.0});
      ConverseBound bound = lambda_sum_bound(spec, budget);
      CHECK(bound.envelope_term <= 1e-9);
    }
  }
}

TEST_CASE("condition violation is detected through the envelope") {
  // W = BSC(0.2) against an asymmetric V that violates the ratio condition
  // already at the gamma -> 0 limit, so the inner function turns positive
  // inside the admissible weight range.
  Channel v = validate_channel({{0.95, 0.05}, {0.6, 0.4}});
  BroadcastSpec spec = make_broadcast_spec(bsc(0.2), v, bsc(0.3));
  bool violated_somewhere = false;
  for (long long n : {100LL, 10000LL, 1000000LL}) {
    WeightBudget budget = max_weight(1.0, n, spec.warden, {1.0});
    try {
      lambda_sum_bound(spec, budget);
    } catch (const ConditionViolated&) {
      violated_somewhere = true;
    }
  }
  CHECK(violated_somewhere);
}

TEST_CASE("bsc converse frontier endpoints and midpoint") {
  WeightBudget budget = max_weight(1.0, 10000, bsc(0.3), {1.0});
  double chi2 = chi_squared(bernoulli(0.7), bernoulli(0.3));
  double a = std::sqrt(2.0 / chi2);  // alpha_bar sqrt(n) at delta = 1
  double c1 = 0.8 * std::log(9.0);
  double c2 = 0.6 * std::log(4.0);

  auto sweep = bsc_converse_region(0.1, 0.2, budget, 101);
  CHECK(sweep.front().first == 0.0);
  CHECK(sweep.front().second == doctest::Approx(c2 * a).epsilon(1e-9));
  CHECK(sweep.back().first == doctest::Approx(c1 * a).epsilon(1e-9));
  CHECK(sweep.back().second == 0.0);

  // Normalized midpoint sits on the time-division segment.
  double l1 = covert_capacity_bsc(0.1, bsc(0.3));
  double l2 = covert_capacity_bsc(0.2, bsc(0.3));
  auto mid = sweep[50];
  double share = mid.first / std::sqrt(budget.delta) / l1 +
                 mid.second / std::sqrt(budget.delta) / l2;
  CHECK(share == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(bsc_converse_region(0.3, 0.2, budget), OutOfRange);
  CHECK_THROWS_AS(bsc_converse_region(0.1, 0.6, budget), OutOfRange);
}

TEST_CASE("gaussian converse frontier endpoints") {
  const double n1 = 1.0, n2 = 2.0, sigma2 = 1.5;
  WeightBudget budget = max_weight_gaussian(1.0, 10000, sigma2);
  auto sweep = gaussian_converse_region(n1, n2, sigma2, budget, 65);
  CHECK(sweep.front().first == 0.0);
  CHECK(sweep.front().second == doctest::Approx(budget.alpha_bar / (2 * n2)).epsilon(1e-12));
  CHECK(sweep.back().first == doctest::Approx(budget.alpha_bar / (2 * n1)).epsilon(1e-12));
  CHECK(sweep.back().second == 0.0);

  // Normalized endpoints hit (sigma2/N1, 0) and (0, sigma2/N2).
  double scale = std::sqrt(10000.0 / 1.0);
  CHECK(sweep.back().first * scale == doctest::Approx(sigma2 / n1).epsilon(1e-9));
  CHECK(sweep.front().second * scale == doctest::Approx(sigma2 / n2).epsilon(1e-9));

  CHECK_THROWS_AS(gaussian_converse_region(2.0, 1.0, sigma2, budget), OutOfRange);
}

TEST_CASE("mrs gerber check") {
  auto [lhs0, rhs0] = mrs_gerber_check(0.42, 0.0);
  CHECK(lhs0 == doctest::Approx(rhs0).epsilon(1e-10));

  auto [lhs1, rhs1] = mrs_gerber_check(std::log(2.0), 0.3);
  CHECK(lhs1 == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(rhs1 == doctest::Approx(std::log(2.0)));

  auto [lhs2, rhs2] = mrs_gerber_check(binary_entropy(0.1), 0.2);
  CHECK(lhs2 == doctest::Approx(binary_entropy(0.26)).epsilon(1e-9));
  CHECK(rhs2 == doctest::Approx(binary_entropy(0.1)));

  CHECK_THROWS_AS(mrs_gerber_check(1.0, 0.2), OutOfRange);
  CHECK_THROWS_AS(mrs_gerber_check(0.3, 0.7), OutOfRange);
}

TEST_CASE("mrs gerber inequality on random conditional mixtures") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 2 + static_cast<int>(unif(rng) * 4);
    std::vector<double> pu(m), x(m);
    double sum = 0.0;
    for (int u = 0; u < m; ++u) {
      pu[u] = unif(rng) + 1e-3;
      sum += pu[u];
      x[u] = unif(rng);
    }
    for (double& w : pu) w /= sum;
    double p = 0.5 * unif(rng);

    double h_cond = 0.0, h_noisy = 0.0;
    for (int u = 0; u < m; ++u) {
      h_cond += pu[u] * binary_entropy(x[u]);
      h_noisy += pu[u] * binary_entropy(binary_convolution(x[u], p));
    }
    auto [lhs, rhs] = mrs_gerber_check(std::min(h_cond, std::log(2.0)), p);
    (void)rhs;
    CHECK(lhs <= h_noisy + 1e-12);
  }
}

TEST_CASE("binary entropy taylor expansion around q") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> qdist(0.05, 0.45);
  for (int trial = 0; trial < 50; ++trial) {
    double q = qdist(rng);
    double slope = std::log((1.0 - q) / q) * (1.0 - 2.0 * q);
    // |h_b''| = 1/(x(1-x)) peaks at the interval edge nearest 0.
    double d_max = (1.0 - 2.0 * q) * 1e-3;
    double edge = q - d_max;
    double c = (1.0 - 2.0 * q) * (1.0 - 2.0 * q) / (2.0 * edge * (1.0 - edge));
    for (double xi : {1e-5, 1e-4, 5e-4, 1e-3}) {
      double remainder = binary_entropy(binary_convolution(q, xi)) - binary_entropy(q) -
                         slope * xi;
      CHECK(std::abs(remainder) <= c * xi * xi + 1e-15);
    }
  }
}

TEST_CASE("entropy power inequality on discretized gaussian mixtures") {
  std::mt19937_64 rng(66);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double var1 = 1.0, var2 = 2.5;  // N2 - N1 = 1.5
  for (int trial = 0; trial < 10; ++trial) {
    int m = 2 + static_cast<int>(unif(rng) * 2);
    std::vector<double> pu(m), weight(m), mean(m);
    double sum = 0.0;
    for (int u = 0; u < m; ++u) {
      pu[u] = unif(rng) + 0.1;
      sum += pu[u];
      weight[u] = unif(rng);
      mean[u] = 4.0 * unif(rng) - 2.0;
    }
    for (double& w : pu) w /= sum;

    double h1 = 0.0, h2 = 0.0;
    for (int u = 0; u < m; ++u) {
      h1 += pu[u] * mixture_entropy(weight[u], mean[u], var1);
      h2 += pu[u] * mixture_entropy(weight[u], mean[u], var2);
    }
    double lhs = std::exp(2.0 * h2);
    double rhs = std::exp(2.0 * h1) + 2.0 * M_PI * M_E * (var2 - var1);
    CHECK(lhs >= rhs * (1.0 - 0.01));
  }
}
