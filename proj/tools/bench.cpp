// Compares the OpenMP kernels against their single-threaded references:
// identical outputs required, wall-clock speedup reported.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "covertbc/channel.hpp"
#include "covertbc/condition.hpp"
#include "covertbc/sim.hpp"

using namespace covertbc;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool maps_equal(const ConditionMap& a, const ConditionMap& b) {
  return a.cells == b.cells && a.q_values == b.q_values;
}

bool reports_equal(const SimReport& a, const SimReport& b) {
  return a.user1.empirical_error == b.user1.empirical_error &&
         a.user2.empirical_error == b.user2.empirical_error &&
         a.joint_error == b.joint_error && a.exact_ensemble_kl == b.exact_ensemble_kl &&
         a.empirical_lrt_sum == b.empirical_lrt_sum &&
         a.lrt_false_alarm == b.lrt_false_alarm;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp threads: (compiled without OpenMP)\n");
#endif

  Channel w = bsc(0.05);
  Channel warden = bsc(0.3);

  {
    auto start = std::chrono::steady_clock::now();
    ConditionMap serial = condition_map_serial(w, warden, 0.05);
    double serial_s = seconds_since(start);

    start = std::chrono::steady_clock::now();
    ConditionMap parallel = condition_map(w, warden, 0.05);
    double parallel_s = seconds_since(start);

    std::printf("condition_map 21x21: serial %.3fs  parallel %.3fs  speedup %.2fx  match %s\n",
                serial_s, parallel_s, serial_s / parallel_s,
                maps_equal(serial, parallel) ? "yes" : "NO");
  }

  {
    SimConfig cfg;
    cfg.spec = make_broadcast_spec(bsc(0.1), bsc(0.2), bsc(0.3));
    cfg.n = 10000;
    cfg.delta = 0.02;
    cfg.rho = 0.5;
    cfg.rates_fraction = 0.3;
    cfg.trials = 4000;
    cfg.seed = 17;

    auto start = std::chrono::steady_clock::now();
    SimReport serial = run_serial(cfg);
    double serial_s = seconds_since(start);

    start = std::chrono::steady_clock::now();
    SimReport parallel = run(cfg);
    double parallel_s = seconds_since(start);

    std::printf("simulator 4000 trials: serial %.3fs  parallel %.3fs  speedup %.2fx  match %s\n",
                serial_s, parallel_s, serial_s / parallel_s,
                reports_equal(serial, parallel) ? "yes" : "NO");
  }
  return 0;
}
