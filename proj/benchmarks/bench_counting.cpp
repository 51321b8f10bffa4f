#include <benchmark/benchmark.h>

#include "latinlab/constructions.hpp"
#include "latinlab/intercalates.hpp"
#include "latinlab/sampling.hpp"

namespace {

using namespace latinlab;

void BM_count_intercalates_boolean(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const LatinSquare sq = group_square(GroupSpec::boolean_group(q));
  for (auto _ : state) benchmark::DoNotOptimize(count_intercalates(sq));
  state.SetComplexityN(sq.order());
}
BENCHMARK(BM_count_intercalates_boolean)->Arg(4)->Arg(5)->Arg(6)->Arg(7)->Complexity();

void BM_count_intercalates_jm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LatinSquare sq = jm_sample(n, JmSampler::default_burnin(n), 1, 1, Rng(1)).front();
  for (auto _ : state) benchmark::DoNotOptimize(count_intercalates(sq));
}
BENCHMARK(BM_count_intercalates_jm)->Arg(16)->Arg(32)->Arg(64);

void BM_enumerate_intercalates(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LatinSquare sq = jm_sample(n, JmSampler::default_burnin(n), 1, 1, Rng(2)).front();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_intercalates(sq));
}
BENCHMARK(BM_enumerate_intercalates)->Arg(16)->Arg(32);

void BM_order3_subsquares(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LatinSquare sq = jm_sample(n, JmSampler::default_burnin(n), 1, 1, Rng(3)).front();
  for (auto _ : state) benchmark::DoNotOptimize(count_order3_subsquares(sq));
}
BENCHMARK(BM_order3_subsquares)->Arg(16)->Arg(32)->Arg(64);

}  // namespace
