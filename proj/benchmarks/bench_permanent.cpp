#include <benchmark/benchmark.h>

#include "latinlab/permanent.hpp"
#include "latinlab/rng.hpp"

namespace {

using namespace latinlab;

void BM_ryser_dense(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(n);
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n));
  for (auto& row : rows)
    for (int c = 0; c < n; ++c)
      if (rng.below(4)) row |= 1ULL << c;
  for (auto _ : state) benchmark::DoNotOptimize(permanent_ryser(rows, n));
}
BENCHMARK(BM_ryser_dense)->Arg(10)->Arg(14)->Arg(18)->Arg(22);

}  // namespace
