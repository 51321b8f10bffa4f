#include <doctest.h>

#include <cmath>

#include "latinlab/constructions.hpp"
#include "latinlab/intercalates.hpp"
#include "latinlab/sampling.hpp"
#include "oracles.hpp"

using namespace latinlab;

namespace {
const LatinSquare kTiny = validate_square({{1, 2}, {2, 1}});
}

TEST_CASE("count_intercalates basics") {
  CHECK(count_intercalates(kTiny) == 1);
  CHECK(count_intercalates(group_square(GroupSpec::cyclic(5))) == 0);
  // figure square: 4 intercalates, frozen from the quadruple-scan oracle
  const LatinSquare fig = oracles::figure_square();
  CHECK(count_intercalates(fig) == 4);
  CHECK(count_intercalates(fig) == oracles::quad_scan_count(fig));
}

TEST_CASE("enumerate_intercalates basics") {
  SUBCASE("tiny square") {
    const auto ics = enumerate_intercalates(kTiny);
    REQUIRE(ics.size() == 1);
    CHECK(ics[0] == Intercalate{0, 1, 0, 1, 0, 1});
  }
  SUBCASE("cyclic order 5 has none") {
    CHECK(enumerate_intercalates(group_square(GroupSpec::cyclic(5))).empty());
  }
  SUBCASE("boolean q=2 has 12") {
    CHECK(enumerate_intercalates(group_square(GroupSpec::boolean_group(2))).size() == 12);
  }
  SUBCASE("figure square contains the bold witness at rows 1,2 columns 2,4 (1-based)") {
    const auto ics = enumerate_intercalates(oracles::figure_square());
    const bool found = std::any_of(ics.begin(), ics.end(), [](const Intercalate& ic) {
      return ic.r1 == 0 && ic.r2 == 1 && ic.c1 == 1 && ic.c2 == 3;
    });
    CHECK(found);
  }
  SUBCASE("sorted lexicographically") {
    const auto ics = enumerate_intercalates(group_square(GroupSpec::boolean_group(3)));
    CHECK(std::is_sorted(ics.begin(), ics.end()));
  }
}

TEST_CASE("row_pair_count") {
  const std::vector<std::int32_t> a{0, 1, 2, 3}, b{1, 0, 3, 2};
  CHECK(row_pair_count(a, b) == 2);
  CHECK(row_pair_count(a, a) == 0);
  const std::vector<std::int32_t> c{0, 1, 2}, d{1, 2, 0};
  CHECK(row_pair_count(c, d) == 0);
  const std::vector<std::int32_t> bad{0, 0, 1};
  CHECK_THROWS_AS(row_pair_count(c, bad), Error);
}

TEST_CASE("triple-set counting agrees with the pattern oracle on raw systems") {
  Rng rng(5150);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(3));
    std::vector<Triple> raw;
    const int m = 6 + static_cast<int>(rng.below(20));
    for (int i = 0; i < m; ++i)
      raw.push_back({static_cast<std::int32_t>(rng.below(n)), static_cast<std::int32_t>(rng.below(n)),
                     static_cast<std::int32_t>(rng.below(n))});
    const std::int64_t lib = count_intercalates(n, raw);
    CHECK(lib == oracles::triple_pattern_count(n, raw));
    CHECK(lib == static_cast<std::int64_t>(enumerate_intercalates(n, raw).size()));
  }
}

TEST_CASE("grid counting equals the triple-set path") {
  for_each_square(4, [&](const LatinSquare& sq) {
    REQUIRE(count_intercalates(sq) == count_intercalates(triple_view(sq)));
  });
}

TEST_CASE("shared_edge_pairs") {
  CHECK(shared_edge_pairs(kTiny) == 0);
  CHECK(shared_edge_pairs(group_square(GroupSpec::cyclic(5))) == 0);
  // frozen from the pairwise-intersection oracle over all C(12,2) pairs
  CHECK(shared_edge_pairs(group_square(GroupSpec::boolean_group(2))) == 48);
}

TEST_CASE("max_disjoint_family") {
  CHECK(max_disjoint_family(kTiny, DisjointMode::Exact) == 1);
  CHECK(max_disjoint_family(group_square(GroupSpec::cyclic(5)), DisjointMode::Exact) == 0);
  const LatinSquare bool2 = group_square(GroupSpec::boolean_group(2));
  const auto ics = enumerate_intercalates(bool2);
  // frozen from the exhaustive independent-set oracle
  CHECK(max_disjoint_family(ics, DisjointMode::Exact) == 4);
  CHECK(max_disjoint_family(ics, DisjointMode::Exact) == oracles::max_disjoint_oracle(ics));
  CHECK(max_disjoint_family(ics, DisjointMode::Greedy) <= 4);
  CHECK(max_disjoint_family(ics, DisjointMode::Greedy) >=
        static_cast<std::int64_t>(ics.size()) - shared_edge_pairs(ics));
  // boolean q=3 has 56 intercalates: over the exact guard
  const auto big = enumerate_intercalates(group_square(GroupSpec::boolean_group(3)));
  CHECK_THROWS_AS(max_disjoint_family(big, DisjointMode::Exact), Error);
  CHECK(max_disjoint_family(big, DisjointMode::Greedy) >= 1);
}

TEST_CASE("exact N' matches the subset oracle on assorted small instances") {
  Rng rng(404);
  int tested = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(3));
    const LatinRectangle rect = oracles::random_rectangle(n, n, rng);
    const auto ics = enumerate_intercalates(rect);
    if (ics.size() > 16) continue;
    ++tested;
    CHECK(max_disjoint_family(ics, DisjointMode::Exact) == oracles::max_disjoint_oracle(ics));
    CHECK(max_disjoint_family(ics, DisjointMode::Greedy) <=
          max_disjoint_family(ics, DisjointMode::Exact));
  }
  CHECK(tested > 3);
}

TEST_CASE("count_through_edges") {
  const LatinSquare fig = oracles::figure_square();
  CHECK(count_through_edges(fig, triple_view(fig)) == count_intercalates(fig));
  CHECK(count_through_edges(fig, TripleSet(5, {})) == 0);
  // bold cell (1,2,1) 1-based = (0,1,0); frozen from the filter oracle
  const TripleSet bold(5, {{0, 1, 0}});
  CHECK(count_through_edges(fig, bold) == 1);
  // union bound: N_{F1 u F2} <= N_F1 + N_F2
  const TripleSet f1(5, {{0, 1, 0}, {2, 2, 0}});
  const TripleSet f2(5, {{4, 0, 0}, {3, 3, 1}});
  std::vector<Triple> both = f1.triples();
  both.insert(both.end(), f2.triples().begin(), f2.triples().end());
  CHECK(count_through_edges(fig, TripleSet(5, both)) <=
        count_through_edges(fig, f1) + count_through_edges(fig, f2));
}

TEST_CASE("count_good") {
  const LatinSquare bool2 = group_square(GroupSpec::boolean_group(2));
  SUBCASE("empty matching") { CHECK(count_good(bool2, TripleSet(4, {})) == 0); }
  SUBCASE("a singleton matching makes every intercalate through it good") {
    // the other row, column and symbol of an intercalate never coincide with
    // those of its contained edge, so |M| = 1 imposes no extra constraint;
    // the tiny square's single intercalate through (0,0,0) is good
    CHECK(count_good(kTiny, TripleSet(2, {{0, 0, 0}})) == 1);
  }
  SUBCASE("boolean q=2 with a singleton, frozen from the filter oracle") {
    CHECK(count_good(bool2, TripleSet(4, {{0, 0, 0}})) == 3);
  }
  SUBCASE("good counts are dominated by through-edge counts") {
    const TripleSet m(4, {{0, 0, 0}, {1, 2, 3}});
    CHECK(count_good(bool2, m) <= count_through_edges(bool2, m));
  }
  SUBCASE("non-matchings are rejected") {
    CHECK_THROWS_AS(count_good(bool2, TripleSet(4, {{0, 0, 0}, {0, 1, 1}})), Error);
  }
}

TEST_CASE("count_order3_subsquares") {
  CHECK(count_order3_subsquares(group_square(GroupSpec::cyclic(3))) == 1);
  CHECK(count_order3_subsquares(kTiny) == 0);
  CHECK(count_order3_subsquares(group_square(GroupSpec::boolean_group(2))) == 0);
  SUBCASE("matches the triple-scan oracle") {
    Rng rng(777);
    CHECK(count_order3_subsquares(group_square(GroupSpec::cyclic(6))) ==
          oracles::order3_oracle(group_square(GroupSpec::cyclic(6))));
    CHECK(count_order3_subsquares(group_square(GroupSpec::cyclic(9))) ==
          oracles::order3_oracle(group_square(GroupSpec::cyclic(9))));
    for (int trial = 0; trial < 8; ++trial) {
      const LatinRectangle r = oracles::random_rectangle(6, 6, rng);
      const LatinSquare sq = r.to_square();
      CHECK(count_order3_subsquares(sq) == oracles::order3_oracle(sq));
    }
  }
}

TEST_CASE("heavy_edge_subset") {
  SUBCASE("m = 0") { CHECK(heavy_edge_subset(kTiny, 0).empty()); }
  SUBCASE("lexicographic tie-break on the tiny square") {
    const TripleSet chosen = heavy_edge_subset(kTiny, 1);
    CHECK(chosen.triples() == std::vector<Triple>{{0, 0, 0}});
  }
  SUBCASE("guard") { CHECK_THROWS_AS(heavy_edge_subset(kTiny, 5), Error); }
  SUBCASE("greedy coverage is within (1 - 1/e) of the exact optimum") {
    const LatinSquare bool2 = group_square(GroupSpec::boolean_group(2));
    const auto ics = enumerate_intercalates(bool2);
    const TripleSet all = triple_view(bool2);
    std::vector<std::uint32_t> masks;
    for (const Triple& t : all.triples()) {
      std::uint32_t mask = 0;
      for (std::size_t j = 0; j < ics.size(); ++j)
        for (const Triple& e : intercalate_triples(ics[j]))
          if (e == t) mask |= 1u << j;
      masks.push_back(mask);
    }
    for (int m = 1; m <= 6; ++m) {
      const TripleSet chosen = heavy_edge_subset(bool2, m);
      int covered = 0;
      for (const Intercalate& ic : ics) {
        for (const Triple& t : intercalate_triples(ic))
          if (chosen.contains(t)) {
            ++covered;
            break;
          }
      }
      const int opt = oracles::max_coverage_opt(masks, m);
      CHECK(covered >= static_cast<int>(std::ceil((1.0 - 1.0 / std::exp(1.0)) * opt) - 1e-9));
    }
  }
}

TEST_CASE("expected_intercalates") {
  CHECK(expected_intercalates(10) == doctest::Approx(18.225).epsilon(1e-12));
  CHECK(expected_intercalates(2) == doctest::Approx(0.125).epsilon(1e-12));
  // 2 C(n,2)^3 / n^4 = (1 - 1/n)^3 n^2/4; at n = 50 that is 588.245
  CHECK(expected_intercalates(50) == doctest::Approx(588.245).epsilon(1e-9));
  CHECK(expected_intercalates(50) / (50.0 * 50.0 / 4.0) ==
        doctest::Approx(std::pow(1.0 - 1.0 / 50.0, 3)).epsilon(1e-12));
  CHECK_THROWS_AS(expected_intercalates(1), Error);
}

TEST_CASE("every intercalate intersects at most 4n others") {
  const auto assert_bound = [](const LatinSquare& sq) {
    const auto ics = enumerate_intercalates(sq);
    const int n = sq.order();
    for (std::size_t i = 0; i < ics.size(); ++i) {
      int neighbours = 0;
      for (std::size_t j = 0; j < ics.size(); ++j)
        if (i != j && intercalates_intersect(ics[i], ics[j])) ++neighbours;
      REQUIRE(neighbours <= 4 * n);
    }
  };
  SUBCASE("exhaustive n <= 5") {
    for (int n = 2; n <= 5; ++n) for_each_square(n, assert_bound);
  }
  SUBCASE("sampled squares up to n = 12") {
    for (int n : {8, 10, 12}) {
      JmSampler sampler(n, JmSampler::default_burnin(n), JmSampler::default_thin(n), Rng(n));
      for (int i = 0; i < 15; ++i) assert_bound(sampler.next());
    }
  }
}

TEST_CASE("intercalate_stats bundles the invariant triple") {
  const IntercalateStats stats = intercalate_stats(group_square(GroupSpec::boolean_group(2)));
  CHECK(stats.N == 12);
  CHECK(stats.N2 == 48);
  CHECK(stats.Nprime == 4);
  CHECK(stats.exact);
  CHECK(stats.Nprime <= stats.N);
  CHECK(stats.Nprime >= stats.N - stats.N2);
  CHECK(stats_json(stats) == R"({"N":12,"N2":48,"Nprime":4,"exact":true})");
}
