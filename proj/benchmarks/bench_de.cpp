#include <benchmark/benchmark.h>

#include "nbvb/de.hpp"
#include "nbvb/threshold.hpp"

using namespace nbvb;

static void BM_de_step(benchmark::State& state) {
  const DeParams params{5, 6, Algorithm::sbb};
  const DeState s0 = de_init(0.2, params);
  for (auto _ : state) {
    benchmark::DoNotOptimize(de_step(s0, params));
  }
}
BENCHMARK(BM_de_step);

static void BM_de_verdict_success(benchmark::State& state) {
  const DeParams params{5, 6, Algorithm::sbb};
  const StopRule stop{};
  for (auto _ : state) {
    benchmark::DoNotOptimize(de_verdict(0.30, params, stop));
  }
}
BENCHMARK(BM_de_verdict_success);

static void BM_de_verdict_stall(benchmark::State& state) {
  const DeParams params{5, 6, Algorithm::sbb};
  const StopRule stop{};
  for (auto _ : state) {
    benchmark::DoNotOptimize(de_verdict(0.35, params, stop));
  }
}
BENCHMARK(BM_de_verdict_stall);

static void BM_find_threshold(benchmark::State& state) {
  const DeParams params{5, 6, Algorithm::sbb};
  const StopRule stop{};
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_threshold(params, stop, 1e-3));
  }
}
BENCHMARK(BM_find_threshold)->Unit(benchmark::kMillisecond);

static void BM_lm_prephase(benchmark::State& state) {
  const DeParams params{7, 8, Algorithm::lm};
  for (auto _ : state) {
    benchmark::DoNotOptimize(lm_prephase(0.2, params));
  }
}
BENCHMARK(BM_lm_prephase);

BENCHMARK_MAIN();
