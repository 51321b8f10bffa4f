#include <doctest.h>

#include <algorithm>
#include <set>

#include "latinlab/sampling.hpp"
#include "latinlab/switching.hpp"
#include "latinlab/triples.hpp"
#include "oracles.hpp"

using namespace latinlab;

namespace {

// first-row intercalate witnesses by direct cell scan (library-independent)
std::set<std::array<int, 3>> witness_oracle(const LatinRectangle& q) {
  std::set<std::array<int, 3>> out;
  for (int i = 1; i < q.rows_count(); ++i)
    for (int x = 0; x < q.order(); ++x)
      for (int y = x + 1; y < q.order(); ++y)
        if (q.at(0, x) != q.at(0, y) && q.at(i, x) == q.at(0, y) && q.at(i, y) == q.at(0, x))
          out.insert({i, x, y});
  return out;
}

}  // namespace

TEST_CASE("the order-2 square has one switching and it is invalid") {
  const LatinRectangle rect = validate_rectangle({{1, 2}, {2, 1}});
  const auto switchings = enumerate_switchings(rect);
  REQUIRE(switchings.size() == 1);
  CHECK(switchings[0].sw == Switching{1, 0, 1});
  CHECK_FALSE(switchings[0].valid);
}

TEST_CASE("switching enumeration count is (k-1) C(n,2)") {
  Rng rng(64);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(4));
    const int k = 2 + static_cast<int>(rng.below(std::min(n - 1, 3)));
    const LatinRectangle rect = oracles::random_rectangle(k, n, rng);
    CHECK(enumerate_switchings(rect).size() ==
          static_cast<std::size_t>((k - 1) * n * (n - 1) / 2));
  }
  CHECK_THROWS_AS(enumerate_switchings(validate_rectangle({{1, 2, 3}})), Error);
}

TEST_CASE("validity flags match a full revalidation oracle") {
  Rng rng(321);
  for (int trial = 0; trial < 20; ++trial) {
    const LatinRectangle rect = oracles::random_rectangle(2, 5, rng);
    for (const SwitchingRecord& rec : enumerate_switchings(rect)) {
      std::vector<std::vector<int>> grid(rect.rows_count(), std::vector<int>(rect.order()));
      for (int r = 0; r < rect.rows_count(); ++r)
        for (int c = 0; c < rect.order(); ++c) grid[r][c] = rect.at(r, c) + 1;
      std::swap(grid[rec.sw.row][rec.sw.x], grid[rec.sw.row][rec.sw.y]);
      CHECK(rec.valid == oracles::valid_rectangle_oracle(grid));
    }
  }
}

TEST_CASE("apply_switching") {
  Rng rng(11);
  const LatinRectangle rect = oracles::random_rectangle(3, 6, rng);
  const auto switchings = enumerate_switchings(rect);
  int applied = 0;
  for (const SwitchingRecord& rec : switchings) {
    if (!rec.valid) {
      CHECK_THROWS_AS(apply_switching(rect, rec.sw), Error);
      continue;
    }
    ++applied;
    const LatinRectangle swapped = apply_switching(rect, rec.sw);
    CHECK(apply_switching(swapped, rec.sw) == rect);  // involution
    // hypergraph view: exactly two triples removed, two added
    const std::vector<Triple> before = triple_view(rect).triples();
    const std::vector<Triple> after = triple_view(swapped).triples();
    std::vector<Triple> gone, added;
    std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                        std::back_inserter(gone));
    std::set_difference(after.begin(), after.end(), before.begin(), before.end(),
                        std::back_inserter(added));
    CHECK(gone.size() == 2);
    CHECK(added.size() == 2);
  }
  CHECK(applied > 0);
}

TEST_CASE("first_row_intercalate_count") {
  CHECK(first_row_intercalate_count(validate_rectangle({{1, 2, 3, 4}, {2, 1, 4, 3}})) == 2);
  CHECK(first_row_intercalate_count(validate_rectangle({{1, 2, 3, 4}})) == 0);
  const LatinRectangle fig5 = LatinRectangle::from_square(oracles::figure_square(), 5);
  std::int64_t filtered = 0;
  for (const Intercalate& ic : enumerate_intercalates(fig5))
    if (ic.r1 == 0) ++filtered;
  CHECK(first_row_intercalate_count(fig5) == filtered);
}

TEST_CASE("switching effects match a from-scratch recount") {
  Rng rng(1212);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 5 + static_cast<int>(rng.below(3));
    const int k = 2 + static_cast<int>(rng.below(2));
    const LatinRectangle rect = oracles::random_rectangle(k, n, rng);
    const SwitchingReport report = switching_effect_report(rect);
    CHECK(report.first_row_count == static_cast<std::int64_t>(witness_oracle(rect).size()));
    for (const SwitchingRecord& rec : report.records) {
      if (!rec.valid) continue;
      const LatinRectangle swapped = apply_switching(rect, rec.sw);
      const auto before = witness_oracle(rect);
      const auto after = witness_oracle(swapped);
      std::int64_t created = 0, destroyed = 0;
      for (const auto& w : after)
        if (!before.count(w)) ++created;
      for (const auto& w : before)
        if (!after.count(w)) ++destroyed;
      CHECK(rec.creates == created);
      CHECK(rec.destroys == destroyed);
      CHECK(rec.delta == static_cast<std::int64_t>(after.size()) - static_cast<std::int64_t>(before.size()));
    }
  }
}

TEST_CASE("delta is bounded by 2 on an exhaustive small census") {
  for_each_rectangle(2, 4, [&](const LatinRectangle& rect) {
    for (const SwitchingRecord& rec : switching_effect_report(rect).records)
      if (rec.valid) REQUIRE(std::abs(rec.delta) <= 2);
  });
}

TEST_CASE("per-intercalate destroying switchings reach the 2(n-2k) bound") {
  Rng rng(2024);
  const int n = 10, k = 2;
  for (int trial = 0; trial < 25; ++trial) {
    const LatinRectangle rect = oracles::random_rectangle(k, n, rng);
    const auto counts = destroying_switching_counts(rect);
    CHECK(counts.size() == static_cast<std::size_t>(first_row_intercalate_count(rect)));
    for (std::int64_t c : counts) CHECK(c >= 2 * (n - 2 * k));
  }
}

TEST_CASE("destroying counts agree with brute force application") {
  Rng rng(555);
  for (int trial = 0; trial < 10; ++trial) {
    const LatinRectangle rect = oracles::random_rectangle(3, 6, rng);
    const auto targets = first_row_intercalates(rect);
    const auto counts = destroying_switching_counts(rect);
    REQUIRE(counts.size() == targets.size());
    for (std::size_t t = 0; t < targets.size(); ++t) {
      std::int64_t brute = 0;
      for (const SwitchingRecord& rec : enumerate_switchings(rect)) {
        if (!rec.valid) continue;
        const LatinRectangle swapped = apply_switching(rect, rec.sw);
        const auto after = enumerate_intercalates(swapped);
        if (std::find(after.begin(), after.end(), targets[t]) == after.end()) ++brute;
      }
      CHECK(counts[t] == brute);
    }
  }
}

TEST_CASE("good-intercalate count jumps by at most 6 under restricted switchings") {
  Rng rng(8888);
  int tested = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 6;
    const int k = 4;
    const LatinRectangle rect = oracles::random_rectangle(k, n, rng);
    // matching inside the first r rows/cols/syms, r = 1 here
    const TripleSet m(n, {{0, 0, rect.at(0, 0)}});
    const int restrict_from = 1;
    const std::int64_t before = count_good(rect, m);
    for (const SwitchingRecord& rec : enumerate_switchings(rect, restrict_from)) {
      if (!rec.valid) continue;
      ++tested;
      const std::int64_t after = count_good(apply_switching(rect, rec.sw), m);
      REQUIRE(std::abs(after - before) <= 6);
    }
  }
  CHECK(tested > 50);
}

TEST_CASE("row restriction limits the enumerated rows") {
  Rng rng(99);
  const LatinRectangle rect = oracles::random_rectangle(4, 6, rng);
  const SwitchingReport report = switching_effect_report(rect, 2);
  CHECK(report.records.size() == 2 * 15);  // rows 2 and 3 only
  for (const SwitchingRecord& rec : report.records) CHECK(rec.sw.row >= 2);
}

TEST_CASE("report CSV shape") {
  const LatinRectangle rect = validate_rectangle({{1, 2, 3}, {2, 3, 1}});
  const std::string csv = switching_report_csv(switching_effect_report(rect));
  CHECK(csv.rfind("i,x,y,valid,delta,creates,destroys\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 switchings
}
