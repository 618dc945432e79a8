#include <benchmark/benchmark.h>

#include "p1/classifier.hpp"
#include "p1/cubic.hpp"
#include "p1/ode.hpp"
#include "p1/stokes.hpp"

using namespace p1;

static void BM_IntegrateTritronquee(benchmark::State& st) {
  const RealState s0 = seed_tritronquee(-20);
  for (auto _ : st) benchmark::DoNotOptimize(integrate(s0, static_cast<double>(st.range(0))));
}
BENCHMARK(BM_IntegrateTritronquee)->Arg(6)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_ComputeStokes(benchmark::State& st) {
  MonodromyConfig cfg;
  cfg.extended = st.range(0) != 0;
  if (!cfg.extended) cfg.ode_tol = 1e-13;
  for (auto _ : st) benchmark::DoNotOptimize(compute_stokes(0.5, 2.0, cfg));
}
BENCHMARK(BM_ComputeStokes)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_ClassifyRb(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(classify_rb(1.0, 2.5));
}
BENCHMARK(BM_ClassifyRb)->Unit(benchmark::kMillisecond);

static void BM_Alpha0(benchmark::State& st) {
  double A = -1;
  for (auto _ : st) {
    benchmark::DoNotOptimize(alpha0(A));
    A = A > 3 ? -1 : A + 0.37;
  }
}
BENCHMARK(BM_Alpha0)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
