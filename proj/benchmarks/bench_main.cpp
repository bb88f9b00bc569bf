#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "dk/dk_series.hpp"
#include "dk/generators.hpp"
#include "dk/metrics.hpp"
#include "dk/rewiring.hpp"

namespace {

// Heavy-tailed simple graph: cleaned 1K pseudograph of a Zipf-like sequence.
dk::Graph heavy_tailed(std::size_t n) {
  dk::OneK one;
  one.n = n;
  std::size_t sum = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    const auto k = static_cast<dk::Degree>(std::max<std::size_t>(1, 2 * n / (i * 8 + 8)));
    ++one.counts[k];
    sum += k;
  }
  if (sum % 2) {  // make the sum even: promote one leaf
    --one.counts[1];
    ++one.counts[2];
  }
  return dk::gen_pseudograph_1k(one, 1).graph;
}

void BM_Extract3K(benchmark::State& state) {
  const dk::Graph g = heavy_tailed(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dk::extract_3k(g));
}
BENCHMARK(BM_Extract3K)->Arg(1000)->Arg(4000)->Arg(16000);

void BM_Betweenness(benchmark::State& state) {
  const dk::Graph g = dk::giant_connected_component(heavy_tailed(static_cast<std::size_t>(state.range(0)))).graph;
  for (auto _ : state) benchmark::DoNotOptimize(dk::betweenness(g));
}
BENCHMARK(BM_Betweenness)->Arg(500)->Arg(2000);

void BM_SwapProposal(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const dk::Graph g = heavy_tailed(4000);
  dk::RewiringChain chain(g, level, 7);
  for (auto _ : state) {
    auto move = chain.propose();
    if (move) {
      benchmark::DoNotOptimize(chain.delta(*move, level == 3));
      chain.apply(*move);
    }
  }
}
BENCHMARK(BM_SwapProposal)->DenseRange(0, 3);

}  // namespace

BENCHMARK_MAIN();
