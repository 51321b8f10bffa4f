#include <doctest.h>

#include <cmath>
#include <set>

#include "latinlab/rng.hpp"

using latinlab::Rng;

TEST_CASE("identical seeds replay identical sequences") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) REQUIRE(a.next() == b.next());
}

TEST_CASE("streams of one master seed differ from each other") {
  Rng a = Rng::stream(7, 0);
  Rng b = Rng::stream(7, 1);
  int agree = 0;
  for (int i = 0; i < 64; ++i)
    if (a.next() == b.next()) ++agree;
  CHECK(agree == 0);
}

TEST_CASE("below is bounded and covers the range") {
  Rng rng(1);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t v = rng.below(7);
    REQUIRE(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("unit stays in [0,1)") {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("bernoulli threshold matches its probability roughly") {
  Rng rng(11);
  const std::uint64_t threshold = Rng::threshold_for(0.25);
  int hits = 0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i)
    if (rng.bernoulli(threshold)) ++hits;
  // 5 sigma around 0.25
  CHECK(std::abs(hits / static_cast<double>(trials) - 0.25) < 5 * 0.433 / std::sqrt(trials));
}
