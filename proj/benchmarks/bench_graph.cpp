#include <benchmark/benchmark.h>

#include "nbvb/graph.hpp"
#include "nbvb/signal.hpp"

using namespace nbvb;

static void BM_build_graph(benchmark::State& state) {
  const GraphSpec spec{state.range(0), 5, 6, 42};
  for (auto _ : state) {
    benchmark::DoNotOptimize(BipartiteGraph::build_random_regular(spec));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_build_graph)->Arg(3000)->Arg(30000)->Arg(99996)->Unit(benchmark::kMillisecond);

static void BM_sample_signal(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sample_signal(state.range(0), {0.25, ValueModel::uniform_integer_exact, 7}));
  }
}
BENCHMARK(BM_sample_signal)->Arg(30000)->Arg(99996)->Unit(benchmark::kMillisecond);

static void BM_encode_exact(benchmark::State& state) {
  const auto g = BipartiteGraph::build_random_regular({state.range(0), 5, 6, 42});
  const auto s =
      sample_signal(state.range(0), {0.25, ValueModel::uniform_integer_exact, 7});
  for (auto _ : state) {
    benchmark::DoNotOptimize(encode_exact(g, s.ivals));
  }
}
BENCHMARK(BM_encode_exact)->Arg(30000)->Arg(99996)->Unit(benchmark::kMillisecond);
