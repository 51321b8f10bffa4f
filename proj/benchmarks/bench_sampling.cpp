#include <benchmark/benchmark.h>

#include "latinlab/sampling.hpp"

namespace {

using namespace latinlab;

void BM_jm_step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  JmState st = JmState::initial(n);
  Rng rng(7);
  for (auto _ : state) st.step(rng);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_jm_step)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_jm_sample_square(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  JmSampler sampler(n, JmSampler::default_burnin(n), JmSampler::default_thin(n), Rng(8));
  for (auto _ : state) benchmark::DoNotOptimize(sampler.next());
}
BENCHMARK(BM_jm_sample_square)->Arg(8)->Arg(16)->Arg(32);

void BM_enumerate_squares(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    std::int64_t count = 0;
    for_each_square(n, [&](const LatinSquare&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_enumerate_squares)->Arg(4)->Arg(5);

void BM_random_completion(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LatinRectangle empty(0, n, {});
  Rng rng(9);
  for (auto _ : state) benchmark::DoNotOptimize(random_completion(empty, rng));
}
BENCHMARK(BM_random_completion)->Arg(4)->Arg(6)->Arg(8);

}  // namespace
