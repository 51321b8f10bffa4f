#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <string>

#include "latinlab/codec.hpp"
#include "latinlab/constructions.hpp"
#include "latinlab/intercalates.hpp"
#include "latinlab/sampling.hpp"
#include "oracles.hpp"

using namespace latinlab;

namespace {

std::string state_key(const JmState& st) {
  const int n = st.order();
  std::string key;
  key.reserve(static_cast<std::size_t>(n) * n * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      for (int s = 0; s < n; ++s) key += static_cast<char>('1' + st.at(r, c, s));
  return key;
}

}  // namespace

TEST_CASE("jm chain at n=1 is a fixed point") {
  JmState st = JmState::initial(1);
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    st.step(rng);
    CHECK(st.proper());
  }
  CHECK(st.to_square().order() == 1);
  const auto stream = jm_sample(1, 5, 3, 4, Rng(9));
  CHECK(stream.size() == 4);
  for (const auto& sq : stream) CHECK(sq == stream.front());
}

namespace {

// breadth-first walk over every reachable state using the exhaustive move
// kernels; every reached state must satisfy the invariants
void walk_state_graph(int n, std::size_t& states, std::size_t& improper_states,
                      std::set<std::string>& proper_squares) {
  std::map<std::string, JmState> seen;
  std::queue<JmState> frontier;
  const JmState start = JmState::initial(n);
  seen.emplace(state_key(start), start);
  frontier.push(start);
  while (!frontier.empty()) {
    const JmState st = frontier.front();
    frontier.pop();
    REQUIRE(st.check_invariants());
    std::vector<JmState> successors;
    if (st.proper()) {
      proper_squares.insert(encode_grid(st.to_square()));
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          for (int s = 0; s < n; ++s) {
            if (st.at(r, c, s) != 0) continue;
            JmState next = st;
            next.apply_proper_move(r, c, s);
            successors.push_back(std::move(next));
          }
    } else {
      ++improper_states;
      for (int bits = 0; bits < 8; ++bits) {
        JmState next = st;
        next.apply_improper_move(bits & 1, bits & 2, bits & 4);
        successors.push_back(std::move(next));
      }
    }
    for (JmState& next : successors) {
      REQUIRE(next.check_invariants());
      const std::string key = state_key(next);
      if (!seen.count(key)) {
        seen.emplace(key, next);
        frontier.push(std::move(next));
      }
    }
  }
  states = seen.size();
}

}  // namespace

TEST_CASE("jm full transition graph at n=2 reaches both squares") {
  std::size_t states = 0, improper = 0;
  std::set<std::string> squares;
  walk_state_graph(2, states, improper, squares);
  CHECK(squares.size() == 2);  // both order-2 squares appear
  // at n=2 the flip touches the whole cube, so no improper state arises
  CHECK(states == 2);
  CHECK(improper == 0);
}

TEST_CASE("jm full transition graph at n=3 visits improper states and all 12 squares") {
  std::size_t states = 0, improper = 0;
  std::set<std::string> squares;
  walk_state_graph(3, states, improper, squares);
  CHECK(squares.size() == 12);
  CHECK(improper > 0);
  CHECK(states > 12);
}

TEST_CASE("jm states keep their invariants over 10^6-step runs") {
  for (int n : {4, 8}) {
    JmState st = JmState::initial(n);
    Rng rng(n);
    const int steps = 1000000;
    for (int i = 1; i <= steps; ++i) {
      st.step(rng);
      if (i % 997 == 0) REQUIRE(st.check_invariants());
    }
    CHECK(st.check_invariants());
  }
}

TEST_CASE("proper states biject with squares") {
  Rng rng(12);
  JmState st = JmState::initial(5);
  int checked = 0;
  for (int i = 0; i < 3000 && checked < 50; ++i) {
    st.step(rng);
    if (st.proper()) {
      const LatinSquare sq = st.to_square();
      CHECK(JmState::from_square(sq) == st);
      ++checked;
    }
  }
  CHECK(checked == 50);
}

TEST_CASE("identical seeds give identical jm streams") {
  const auto a = jm_sample(5, 200, 10, 20, Rng(31337));
  const auto b = jm_sample(5, 200, 10, 20, Rng(31337));
  CHECK(a == b);
  const auto c = jm_sample(5, 200, 10, 20, Rng(31338));
  CHECK(a != c);
}

TEST_CASE("square enumeration totals and order") {
  const std::vector<std::int64_t> totals{1, 2, 12, 576};
  for (int n = 1; n <= 4; ++n) {
    std::vector<std::string> keys;
    for_each_square(n, [&](const LatinSquare& sq) { keys.push_back(encode_grid(sq)); });
    CHECK(static_cast<std::int64_t>(keys.size()) == totals[n - 1]);
    CHECK(std::is_sorted(keys.begin(), keys.end()));
    CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());
  }
  CHECK_THROWS_AS(for_each_square(6, [](const LatinSquare&) {}), Error);
}

TEST_CASE("rectangle enumeration totals") {
  CHECK(enumerate_rectangles(1, 3).size() == 6);    // 3! permutations
  CHECK(enumerate_rectangles(2, 3).size() == 12);   // 2 discordant rows per first row
  CHECK(enumerate_rectangles(2, 4).size() == 216);  // 4! * D_4
  CHECK_THROWS_AS(enumerate_rectangles(3, 7), Error);
  CHECK_THROWS_AS(enumerate_rectangles(2, 8), Error);
}

TEST_CASE("count_row_extensions") {
  SUBCASE("one row short forces a unique completion") {
    const LatinSquare fig = oracles::figure_square();
    const LatinRectangle rect = LatinRectangle::from_square(fig, 4);
    CHECK(count_row_extensions(rect) == 1);
  }
  SUBCASE("single identity row of order 3 has two extensions") {
    const LatinRectangle rect = validate_rectangle({{1, 2, 3}});
    CHECK(count_row_extensions(rect) == 2);
  }
  SUBCASE("empty rectangle counts all permutations") {
    const LatinRectangle rect(0, 3, {});
    CHECK(count_row_extensions(rect) == 6);
  }
  SUBCASE("derangement numbers from identity rows") {
    const std::map<int, std::int64_t> derangements{{2, 1}, {3, 2}, {4, 9}, {5, 44}, {6, 265}, {7, 1854}};
    for (const auto& [n, expected] : derangements) {
      std::vector<std::vector<int>> grid(1, std::vector<int>(n));
      for (int c = 0; c < n; ++c) grid[0][c] = c + 1;
      CHECK(count_row_extensions(validate_rectangle(grid)) == static_cast<uint128>(expected));
    }
  }
}

TEST_CASE("random_completion") {
  Rng rng(808);
  SUBCASE("one missing row is forced") {
    const LatinSquare fig = oracles::figure_square();
    const LatinRectangle rect = LatinRectangle::from_square(fig, 4);
    for (int i = 0; i < 5; ++i) CHECK(random_completion(rect, rng) == fig);
  }
  SUBCASE("completions are valid squares") {
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 3 + static_cast<int>(rng.below(4));
      const int k = static_cast<int>(rng.below(n));
      const LatinRectangle rect = oracles::random_rectangle(std::max(k, 1), n, rng);
      const LatinSquare sq = random_completion(rect, rng);
      CHECK_NOTHROW(validate_square(oracles::to_external_grid(sq)));
      for (int r = 0; r < rect.rows_count(); ++r)
        for (int c = 0; c < n; ++c) REQUIRE(sq.at(r, c) == rect.at(r, c));
    }
  }
  SUBCASE("permanent-weighted completions of the empty rectangle are uniform") {
    // 2*10^4 completions at n = 3 over the 12 squares, 5-sigma bands
    const LatinRectangle empty(0, 3, {});
    std::map<std::string, int> freq;
    const int trials = 20000;
    Rng local(4242);
    for (int i = 0; i < trials; ++i) ++freq[encode_grid(random_completion(empty, local))];
    CHECK(freq.size() == 12);
    const double expect = trials / 12.0;
    const double sigma = std::sqrt(trials * (1.0 / 12) * (11.0 / 12));
    for (const auto& [key, count] : freq) CHECK(std::abs(count - expect) <= 5 * sigma);
  }
  SUBCASE("greedy mode also completes") {
    const LatinRectangle rect = oracles::random_rectangle(2, 6, rng);
    const LatinSquare sq = random_completion(rect, rng, CompletionMode::Greedy);
    CHECK_NOTHROW(validate_square(oracles::to_external_grid(sq)));
  }
  SUBCASE("a boolean corner block keeps its 12 intercalates through completion") {
    // first four rows hold the boolean q=2 square in columns 0..3 and a
    // shifted copy in columns 4..7
    const LatinSquare bool2 = group_square(GroupSpec::boolean_group(2));
    std::vector<std::int32_t> cells;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) cells.push_back(bool2.at(r, c));
      for (int c = 0; c < 4; ++c) cells.push_back(bool2.at(r, c) + 4);
    }
    const LatinRectangle rect(4, 8, cells);
    std::vector<Triple> corner;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        if (rect.at(r, c) < 4) corner.push_back({r, c, rect.at(r, c)});
    CHECK(count_intercalates(8, corner) == 12);
    for (int i = 0; i < 3; ++i) {
      const LatinSquare sq = random_completion(rect, rng);
      CHECK(count_intercalates(induce_subcube(sq, 4)) == 12);
    }
  }
}

TEST_CASE("subset probabilities in exhaustive rectangle censuses") {
  SUBCASE("k=1, n=7: a fixed cell value appears in exactly 1/7 of all rows") {
    std::int64_t total = 0, hits = 0;
    for_each_rectangle(1, 7, [&](const LatinRectangle& r) {
      ++total;
      if (r.at(0, 0) == 0) ++hits;
    });
    CHECK(total == 5040);
    CHECK(hits * 7 == total);
  }
  SUBCASE("k=2, n=7: single-entry and pair probabilities against the 1/n band") {
    // single fixed entry in the second row, and a fixed disjoint pair; the
    // deviation constant of the band (1 +- O(k/(n-2k-Delta)))/n is reported,
    // not assumed
    std::int64_t total = 0, single = 0, pair = 0;
    for_each_rectangle(2, 7, [&](const LatinRectangle& r) {
      ++total;
      if (r.at(1, 0) == 0) ++single;
      if (r.at(0, 0) == 0 && r.at(1, 1) == 1) ++pair;
    });
    CHECK(total == 5040 * 1854);  // 7! * D_7
    CHECK(single * 7 == total);   // exact by symbol symmetry
    const double n = 7, k = 2, delta = 1;
    const double pair_prob = static_cast<double>(pair) / static_cast<double>(total);
    const double constant = std::abs(std::sqrt(pair_prob) * n - 1.0) * (n - 2 * k - delta) / k;
    MESSAGE("pair probability ", pair_prob, " vs 1/n^2 = ", 1.0 / (n * n),
            "; implied band constant ", constant);
    CHECK(pair_prob > 0.0);
  }
}

TEST_CASE("two-row prefixes of exhaustive n=4 squares have bounded measure ratio") {
  // frequency of each first-2-rows rectangle among all 576 squares; reported
  // as a diagnostic of how non-uniform square prefixes can be
  std::map<std::string, std::int64_t> prefix_count;
  for_each_square(4, [&](const LatinSquare& sq) {
    ++prefix_count[encode_grid(LatinRectangle::from_square(sq, 2))];
  });
  CHECK(prefix_count.size() == 216);  // every k=2, n=4 rectangle extends
  std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = 0;
  for (const auto& [key, count] : prefix_count) {
    lo = std::min(lo, count);
    hi = std::max(hi, count);
  }
  CHECK(lo >= 1);
  MESSAGE("prefix measure ratio max/min = ", hi, "/", lo);
}

TEST_CASE("sample_rectangle") {
  SUBCASE("exact-tiny is near-uniform over the 12 rectangles") {
    Rng rng(1001);
    std::map<std::string, int> freq;
    const int trials = 12000;
    for (int i = 0; i < trials; ++i)
      ++freq[encode_grid(sample_rectangle(2, 3, RectangleMode::ExactTiny, rng))];
    CHECK(freq.size() == 12);
    const double expect = trials / 12.0;
    const double sigma = std::sqrt(trials * (1.0 / 12) * (11.0 / 12));
    for (const auto& [key, count] : freq) CHECK(std::abs(count - expect) <= 5 * sigma);
  }
  SUBCASE("square-prefix with k=n is a full square") {
    Rng rng(77);
    const LatinRectangle rect = sample_rectangle(5, 5, RectangleMode::SquarePrefix, rng);
    CHECK(rect.rows_count() == 5);
    CHECK_NOTHROW(rect.to_square());
  }
  SUBCASE("seeded determinism") {
    Rng a(5), b(5);
    CHECK(sample_rectangle(2, 5, RectangleMode::SquarePrefix, a) ==
          sample_rectangle(2, 5, RectangleMode::SquarePrefix, b));
  }
  SUBCASE("guard") {
    Rng rng(6);
    CHECK_THROWS_AS(sample_rectangle(3, 7, RectangleMode::ExactTiny, rng), Error);
  }
}
