#include <benchmark/benchmark.h>

#include "latinlab/trp.hpp"

namespace {

using namespace latinlab;

void BM_trp_run(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = (3 * n * n) / 10;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng rng(seed++);
    benchmark::DoNotOptimize(trp_run(n, m, rng));
  }
}
BENCHMARK(BM_trp_run)->Arg(30)->Arg(60)->Arg(120);

void BM_quasirandom_h2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(42);
  const TrpOutcome out = trp_run(n, (3 * n * n) / 10, rng);
  const TripartiteGraph g = uncovered_graph(n, out.removed.sequence());
  for (auto _ : state) benchmark::DoNotOptimize(quasirandom_deviation(g, 2));
}
BENCHMARK(BM_quasirandom_h2)->Arg(30)->Arg(50)->Arg(80);

void BM_binomial_sparse(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(13);
  for (auto _ : state) benchmark::DoNotOptimize(sample_binomial_hypergraph(n, 0.3 / n, rng));
}
BENCHMARK(BM_binomial_sparse)->Arg(60)->Arg(120);

void BM_prune_conflicts(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(14);
  const std::vector<Triple> g = sample_binomial_hypergraph(n, 0.3 / n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(prune_conflicts(n, g));
}
BENCHMARK(BM_prune_conflicts)->Arg(60)->Arg(120);

}  // namespace
