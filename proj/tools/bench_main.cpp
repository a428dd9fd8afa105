// Timing harness: structured (sparse-table) operator pipeline against the
// dense-matrix oracle, and serial against OpenMP-parallel campaign runs.
// Self-timed with steady_clock; no external benchmark dependency.

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ahc/campaign.hpp"
#include "ahc/oracle.hpp"

using namespace ahc;

namespace {

double time_ms(const std::function<void()> &fn, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i)
    fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void bench_pipelines(int n) {
  const auto s = preset("generic", n);
  SplitMix64 rng(5150 + static_cast<std::uint64_t>(n));
  const int k = 1;
  const int j = (n - k) / 2;
  const JetForm alpha = random_primitive_germ(k, s, rng);

  const double t_build =
      time_ms([&] { (void)build_oracle(s); }, n >= 3 ? 3 : 10);
  const OracleTables tables = build_oracle(s);
  const double t_struct =
      time_ms([&] { (void)theorem_sides(alpha, j, s); }, 20);
  const double t_oracle =
      time_ms([&] { (void)oracle_theorem_lhs(tables, alpha, j); }, 20);

  std::printf("  n=%d  structured theorem eval %8.3f ms   oracle LHS eval "
              "%8.3f ms   oracle table build %8.3f ms\n",
              n, t_struct, t_oracle, t_build);
}

void bench_campaign() {
  CampaignConfig cfg;
  cfg.n_list = {1, 2};
  cfg.presets = {"flat_kahler", "generic"};
  cfg.random_trials = 4;
  cfg.suites = {"lemmas", "theorem", "proof_displays"};

#ifdef _OPENMP
  const int max_threads = omp_get_max_threads();
  omp_set_num_threads(1);
#else
  const int max_threads = 1;
#endif
  const double t_serial = time_ms([&] { (void)run_campaign(cfg); }, 3);
#ifdef _OPENMP
  omp_set_num_threads(max_threads);
#endif
  const double t_parallel = time_ms([&] { (void)run_campaign(cfg); }, 3);
  std::printf("  campaign (12 trials): serial %8.2f ms   %d-thread %8.2f "
              "ms\n",
              t_serial, max_threads, t_parallel);
}

} // namespace

int main() {
  std::printf("structured pipeline vs dense oracle\n");
  for (int n = 1; n <= 3; ++n)
    bench_pipelines(n);
  std::printf("parallel campaign vs serial reference\n");
  bench_campaign();
  return 0;
}
