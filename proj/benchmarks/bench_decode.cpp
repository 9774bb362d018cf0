#include <benchmark/benchmark.h>

#include "nbvb/decoders.hpp"
#include "nbvb/graph.hpp"
#include "nbvb/signal.hpp"

using namespace nbvb;

namespace {

// one decode of a freshly prepared instance at a subcritical density
void decode_bench(benchmark::State& state, Algorithm alg, double alpha0) {
  const std::int64_t n = 15000;
  const auto g = BipartiteGraph::build_random_regular({n, 5, 6, 42});
  const auto s = sample_signal(n, {alpha0, ValueModel::uniform_integer_exact, 43});
  for (auto _ : state) {
    benchmark::DoNotOptimize(decode_instance(alg, g, s, EqualityPolicy::exact()));
  }
  state.SetItemsProcessed(state.iterations() * n);
}

}  // namespace

static void BM_decode_genie(benchmark::State& state) {
  decode_bench(state, Algorithm::genie, 0.53);
}
static void BM_decode_lm(benchmark::State& state) { decode_bench(state, Algorithm::lm, 0.23); }
static void BM_decode_sbb(benchmark::State& state) { decode_bench(state, Algorithm::sbb, 0.30); }
static void BM_decode_xh(benchmark::State& state) { decode_bench(state, Algorithm::xh, 0.16); }

BENCHMARK(BM_decode_genie)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_decode_lm)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_decode_sbb)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_decode_xh)->Unit(benchmark::kMillisecond);

static void BM_decode_gaussian(benchmark::State& state) {
  const std::int64_t n = 15000;
  const auto g = BipartiteGraph::build_random_regular({n, 5, 6, 42});
  const auto s = sample_signal(n, {0.30, ValueModel::gaussian_real, 43});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        decode_instance(Algorithm::sbb, g, s, EqualityPolicy::tolerant(1e-9, 1e-9)));
  }
}
BENCHMARK(BM_decode_gaussian)->Unit(benchmark::kMillisecond);
