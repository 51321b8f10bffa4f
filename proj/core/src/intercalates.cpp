#include "latinlab/intercalates.hpp"

#include <algorithm>
#include <unordered_map>

#include <json.hpp>

namespace latinlab {

namespace {

// Positions of each symbol within a permutation row.
std::vector<std::int32_t> positions_of(std::span<const std::int32_t> row) {
  std::vector<std::int32_t> pos(row.size());
  for (std::int32_t c = 0; c < static_cast<std::int32_t>(row.size()); ++c) pos[row[c]] = c;
  return pos;
}

// Intercalates between two fixed rows via 2-cycles of the symbol map
// sigma(a) = rowB[position of a in rowA].
void pair_intercalates(int i, int j, std::span<const std::int32_t> row_a,
                       std::span<const std::int32_t> row_b, std::vector<Intercalate>* out,
                       std::int64_t* count) {
  const int n = static_cast<int>(row_a.size());
  const std::vector<std::int32_t> pos_a = positions_of(row_a);
  for (std::int32_t a = 0; a < n; ++a) {
    const std::int32_t b = row_b[pos_a[a]];
    if (b <= a) continue;                 // visit each candidate 2-cycle once, from its smaller symbol
    if (row_b[pos_a[b]] != a) continue;   // sigma(b) must close the 2-cycle
    if (count) ++*count;
    if (out) {
      std::int32_t x = pos_a[a];
      std::int32_t y = pos_a[b];
      if (x > y) std::swap(x, y);
      out->push_back({i, j, x, y, row_a[x], row_a[y]});
    }
  }
}

template <typename Grid>
std::int64_t grid_count(const Grid& g, int rows) {
  std::int64_t total = 0;
  for (int i = 0; i < rows; ++i)
    for (int j = i + 1; j < rows; ++j) pair_intercalates(i, j, g.row(i), g.row(j), nullptr, &total);
  return total;
}

template <typename Grid>
std::vector<Intercalate> grid_enumerate(const Grid& g, int rows) {
  std::vector<Intercalate> out;
  for (int i = 0; i < rows; ++i)
    for (int j = i + 1; j < rows; ++j) pair_intercalates(i, j, g.row(i), g.row(j), &out, nullptr);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t pack_key(std::int32_t c1, std::int32_t c2, std::int32_t lo, std::int32_t hi) {
  return (static_cast<std::uint64_t>(static_cast<std::uint16_t>(c1)) << 48) |
         (static_cast<std::uint64_t>(static_cast<std::uint16_t>(c2)) << 32) |
         (static_cast<std::uint64_t>(static_cast<std::uint16_t>(lo)) << 16) |
         static_cast<std::uint64_t>(static_cast<std::uint16_t>(hi));
}

// Generic four-edge scan for arbitrary triple systems. Within each row, every
// ordered column pair (c1 < c2) with symbols (a, b), a != b, is bucketed under
// the key (c1, c2, {a,b}) and its orientation sign(a < b); an intercalate is a
// pair of distinct rows with opposite orientations under the same key.
struct OrientedRows {
  std::vector<std::int32_t> fwd;  // rows carrying (c1,lo),(c2,hi)
  std::vector<std::int32_t> rev;  // rows carrying (c1,hi),(c2,lo)
};

std::unordered_map<std::uint64_t, OrientedRows> bucket_rows(const std::vector<Triple>& raw) {
  std::vector<Triple> triples = raw;
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());

  std::unordered_map<std::uint64_t, OrientedRows> buckets;
  std::size_t row_begin = 0;
  while (row_begin < triples.size()) {
    std::size_t row_end = row_begin;
    while (row_end < triples.size() && triples[row_end].row == triples[row_begin].row) ++row_end;
    for (std::size_t u = row_begin; u < row_end; ++u) {
      for (std::size_t v = u + 1; v < row_end; ++v) {
        const Triple& tu = triples[u];
        const Triple& tv = triples[v];
        if (tu.col == tv.col || tu.sym == tv.sym) continue;
        // sorted order guarantees tu.col < tv.col here
        const std::int32_t a = tu.sym;
        const std::int32_t b = tv.sym;
        const bool forward = a < b;
        const std::uint64_t key =
            pack_key(tu.col, tv.col, forward ? a : b, forward ? b : a);
        OrientedRows& bucket = buckets[key];
        (forward ? bucket.fwd : bucket.rev).push_back(tu.row);
      }
    }
    row_begin = row_end;
  }
  return buckets;
}

std::int64_t greedy_disjoint(const std::vector<Intercalate>& intercalates) {
  std::vector<const Intercalate*> chosen;
  for (const Intercalate& ic : intercalates) {
    bool clash = false;
    for (const Intercalate* got : chosen)
      if (intercalates_intersect(*got, ic)) {
        clash = true;
        break;
      }
    if (!clash) chosen.push_back(&ic);
  }
  return static_cast<std::int64_t>(chosen.size());
}

void mis_branch(std::uint32_t candidates, int size, const std::vector<std::uint32_t>& adj, int& best) {
  if (size + __builtin_popcount(candidates) <= best) return;
  if (candidates == 0) {
    best = size;
    return;
  }
  const int v = __builtin_ctz(candidates);
  const std::uint32_t bit = 1u << v;
  mis_branch(candidates & ~adj[v] & ~bit, size + 1, adj, best);
  mis_branch(candidates & ~bit, size, adj, best);
}

std::int64_t exact_disjoint(const std::vector<Intercalate>& intercalates) {
  const int n = static_cast<int>(intercalates.size());
  if (n > 24) throw Error(Errc::TooLargeForExact, "exact N' guarded to <= 24 intercalates", n);
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (intercalates_intersect(intercalates[i], intercalates[j])) {
        adj[i] |= 1u << j;
        adj[j] |= 1u << i;
      }
  int best = 0;
  mis_branch(n == 0 ? 0u : ((n == 32 ? 0u : (1u << n)) - 1), 0, adj, best);
  return best;
}

std::vector<std::int32_t> matching_usage(const TripleSet& m, int axis) {
  std::vector<std::int32_t> used;
  for (const Triple& t : m.triples()) used.push_back(axis == 0 ? t.row : axis == 1 ? t.col : t.sym);
  std::sort(used.begin(), used.end());
  return used;
}

bool contains_sorted(const std::vector<std::int32_t>& sorted, std::int32_t v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

void require_matching(const TripleSet& m) {
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<std::int32_t> used = matching_usage(m, axis);
    if (std::adjacent_find(used.begin(), used.end()) != used.end())
      throw Error(Errc::NotAMatching, "matching triples must be pairwise disjoint", axis);
  }
}

template <typename Host>
TripleSet host_triples(const Host& host);

template <>
TripleSet host_triples<LatinSquare>(const LatinSquare& host) {
  return triple_view(host);
}
template <>
TripleSet host_triples<LatinRectangle>(const LatinRectangle& host) {
  return triple_view(host);
}
template <>
TripleSet host_triples<TripleSet>(const TripleSet& host) {
  return host;
}

template <typename Host>
TripleSet heavy_subset_impl(const Host& host, std::int64_t m) {
  const TripleSet all = host_triples(host);
  if (m < 0 || m > static_cast<std::int64_t>(all.size()))
    throw Error(Errc::MTooLarge, "m exceeds the number of triples", m, static_cast<long>(all.size()));

  const std::vector<Intercalate> ics = enumerate_intercalates(all);
  const std::size_t words = (ics.size() + 63) / 64;

  struct Candidate {
    Triple t;
    std::vector<std::uint64_t> covers;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(all.size());
  for (const Triple& t : all.triples()) candidates.push_back({t, std::vector<std::uint64_t>(words, 0)});
  if (!ics.empty()) {
    std::unordered_map<std::uint64_t, std::size_t> index;
    const int n = all.order();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const Triple& t = candidates[i].t;
      index[(static_cast<std::uint64_t>(t.row) * n + t.col) * n + t.sym] = i;
    }
    for (std::size_t j = 0; j < ics.size(); ++j)
      for (const Triple& t : intercalate_triples(ics[j])) {
        auto it = index.find((static_cast<std::uint64_t>(t.row) * n + t.col) * n + t.sym);
        if (it != index.end()) candidates[it->second].covers[j / 64] |= 1ULL << (j % 64);
      }
  }

  std::vector<std::uint64_t> covered(words, 0);
  std::vector<char> taken(candidates.size(), 0);
  std::vector<Triple> picked;
  picked.reserve(static_cast<std::size_t>(m));
  for (std::int64_t step = 0; step < m; ++step) {
    std::int64_t best_gain = -1;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (taken[i]) continue;
      std::int64_t gain = 0;
      for (std::size_t w = 0; w < words; ++w)
        gain += __builtin_popcountll(candidates[i].covers[w] & ~covered[w]);
      if (gain > best_gain) {  // candidates are in lexicographic order, so ties keep the first
        best_gain = gain;
        best_idx = i;
      }
    }
    taken[best_idx] = 1;
    picked.push_back(candidates[best_idx].t);
    for (std::size_t w = 0; w < words; ++w) covered[w] |= candidates[best_idx].covers[w];
  }
  std::sort(picked.begin(), picked.end());
  return TripleSet::unchecked(all.order(), std::move(picked));
}

}  // namespace

std::array<Triple, 4> intercalate_triples(const Intercalate& ic) {
  return {Triple{ic.r1, ic.c1, ic.s1}, Triple{ic.r1, ic.c2, ic.s2}, Triple{ic.r2, ic.c1, ic.s2},
          Triple{ic.r2, ic.c2, ic.s1}};
}

bool intercalates_intersect(const Intercalate& a, const Intercalate& b) {
  const auto ta = intercalate_triples(a);
  const auto tb = intercalate_triples(b);
  for (const Triple& x : ta)
    for (const Triple& y : tb)
      if (x == y) return true;
  return false;
}

std::int64_t row_pair_count(std::span<const std::int32_t> row_a, std::span<const std::int32_t> row_b) {
  if (row_a.size() != row_b.size()) throw Error(Errc::NotAPermutation, "rows differ in length");
  require_permutation(row_a);
  require_permutation(row_b);
  std::int64_t count = 0;
  pair_intercalates(0, 1, row_a, row_b, nullptr, &count);
  return count;
}

std::int64_t count_intercalates(const LatinSquare& square) { return grid_count(square, square.order()); }
std::int64_t count_intercalates(const LatinRectangle& rect) { return grid_count(rect, rect.rows_count()); }
std::int64_t count_intercalates(const TripleSet& triples) {
  return count_intercalates(triples.order(), triples.triples());
}

std::int64_t count_intercalates(int n, const std::vector<Triple>& triples) {
  std::int64_t total = 0;
  for (const auto& [key, rows] : bucket_rows(triples)) {
    std::int64_t same = 0;
    // a row listed with both orientations would pair with itself; subtract
    if (!rows.fwd.empty() && !rows.rev.empty()) {
      std::vector<std::int32_t> f = rows.fwd, r = rows.rev;
      std::sort(f.begin(), f.end());
      std::sort(r.begin(), r.end());
      std::vector<std::int32_t> both;
      std::set_intersection(f.begin(), f.end(), r.begin(), r.end(), std::back_inserter(both));
      same = static_cast<std::int64_t>(both.size());
    }
    total += static_cast<std::int64_t>(rows.fwd.size()) * static_cast<std::int64_t>(rows.rev.size()) - same;
  }
  return total;
}

std::vector<Intercalate> enumerate_intercalates(const LatinSquare& square) {
  return grid_enumerate(square, square.order());
}
std::vector<Intercalate> enumerate_intercalates(const LatinRectangle& rect) {
  return grid_enumerate(rect, rect.rows_count());
}
std::vector<Intercalate> enumerate_intercalates(const TripleSet& triples) {
  return enumerate_intercalates(triples.order(), triples.triples());
}

std::vector<Intercalate> enumerate_intercalates(int n, const std::vector<Triple>& triples) {
  std::vector<Intercalate> out;
  for (const auto& [key, rows] : bucket_rows(triples)) {
    const std::int32_t c1 = static_cast<std::int32_t>((key >> 48) & 0xFFFF);
    const std::int32_t c2 = static_cast<std::int32_t>((key >> 32) & 0xFFFF);
    const std::int32_t lo = static_cast<std::int32_t>((key >> 16) & 0xFFFF);
    const std::int32_t hi = static_cast<std::int32_t>(key & 0xFFFF);
    for (std::int32_t rf : rows.fwd)
      for (std::int32_t rr : rows.rev) {
        if (rf == rr) continue;
        if (rf < rr)
          out.push_back({rf, rr, c1, c2, lo, hi});
        else
          out.push_back({rr, rf, c1, c2, hi, lo});
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t shared_edge_pairs(const std::vector<Intercalate>& intercalates) {
  std::int64_t pairs = 0;
  for (std::size_t i = 0; i < intercalates.size(); ++i)
    for (std::size_t j = i + 1; j < intercalates.size(); ++j)
      if (intercalates_intersect(intercalates[i], intercalates[j])) ++pairs;
  return pairs;
}
std::int64_t shared_edge_pairs(const LatinSquare& square) {
  return shared_edge_pairs(enumerate_intercalates(square));
}
std::int64_t shared_edge_pairs(const LatinRectangle& rect) {
  return shared_edge_pairs(enumerate_intercalates(rect));
}
std::int64_t shared_edge_pairs(const TripleSet& triples) {
  return shared_edge_pairs(enumerate_intercalates(triples));
}

std::int64_t max_disjoint_family(const std::vector<Intercalate>& intercalates, DisjointMode mode) {
  return mode == DisjointMode::Exact ? exact_disjoint(intercalates) : greedy_disjoint(intercalates);
}
std::int64_t max_disjoint_family(const LatinSquare& square, DisjointMode mode) {
  return max_disjoint_family(enumerate_intercalates(square), mode);
}
std::int64_t max_disjoint_family(const LatinRectangle& rect, DisjointMode mode) {
  return max_disjoint_family(enumerate_intercalates(rect), mode);
}
std::int64_t max_disjoint_family(const TripleSet& triples, DisjointMode mode) {
  return max_disjoint_family(enumerate_intercalates(triples), mode);
}

std::int64_t count_through_edges(const std::vector<Intercalate>& intercalates, const TripleSet& f) {
  std::int64_t count = 0;
  for (const Intercalate& ic : intercalates) {
    for (const Triple& t : intercalate_triples(ic))
      if (f.contains(t)) {
        ++count;
        break;
      }
  }
  return count;
}
std::int64_t count_through_edges(const LatinSquare& square, const TripleSet& f) {
  return count_through_edges(enumerate_intercalates(square), f);
}
std::int64_t count_through_edges(const LatinRectangle& rect, const TripleSet& f) {
  return count_through_edges(enumerate_intercalates(rect), f);
}
std::int64_t count_through_edges(const TripleSet& triples, const TripleSet& f) {
  return count_through_edges(enumerate_intercalates(triples), f);
}

std::int64_t count_good(const std::vector<Intercalate>& intercalates, const TripleSet& m) {
  require_matching(m);
  const std::vector<std::int32_t> rows = matching_usage(m, 0);
  const std::vector<std::int32_t> cols = matching_usage(m, 1);
  const std::vector<std::int32_t> syms = matching_usage(m, 2);
  std::int64_t count = 0;
  for (const Intercalate& ic : intercalates) {
    int hits = 0;
    Triple hit;
    for (const Triple& t : intercalate_triples(ic))
      if (m.contains(t)) {
        ++hits;
        hit = t;
      }
    if (hits != 1) continue;
    const std::int32_t other_row = ic.r1 == hit.row ? ic.r2 : ic.r1;
    const std::int32_t other_col = ic.c1 == hit.col ? ic.c2 : ic.c1;
    const std::int32_t other_sym = ic.s1 == hit.sym ? ic.s2 : ic.s1;
    if (!contains_sorted(rows, other_row) && !contains_sorted(cols, other_col) &&
        !contains_sorted(syms, other_sym))
      ++count;
  }
  return count;
}
std::int64_t count_good(const LatinSquare& square, const TripleSet& m) {
  return count_good(enumerate_intercalates(square), m);
}
std::int64_t count_good(const LatinRectangle& rect, const TripleSet& m) {
  return count_good(enumerate_intercalates(rect), m);
}
std::int64_t count_good(const TripleSet& triples, const TripleSet& m) {
  return count_good(enumerate_intercalates(triples), m);
}

std::int64_t count_order3_subsquares(const LatinSquare& square) {
  const int n = square.order();
  if (n < 3) return 0;
  std::vector<std::vector<std::int32_t>> pos(n);
  for (int r = 0; r < n; ++r) {
    pos[r].resize(n);
    for (std::int32_t c = 0; c < n; ++c) pos[r][square.at(r, c)] = c;
  }
  std::int64_t total = 0;
  std::vector<char> visited(static_cast<std::size_t>(n));
  for (int r1 = 0; r1 < n; ++r1) {
    for (int r2 = r1 + 1; r2 < n; ++r2) {
      // sigma maps the symbol in row r1 to the one below it in row r2
      std::fill(visited.begin(), visited.end(), 0);
      for (std::int32_t a = 0; a < n; ++a) {
        if (visited[a]) continue;
        // walk the cycle of sigma through a
        std::int32_t b = square.at(r2, pos[r1][a]);
        std::int32_t c = square.at(r2, pos[r1][b]);
        visited[a] = 1;
        if (b == a) continue;
        if (c == a) {  // 2-cycle
          visited[b] = 1;
          continue;
        }
        const std::int32_t closes = square.at(r2, pos[r1][c]);
        // mark the whole cycle visited regardless of length
        std::int32_t walk = b;
        while (walk != a) {
          visited[walk] = 1;
          walk = square.at(r2, pos[r1][walk]);
        }
        if (closes != a) continue;  // cycle longer than 3
        // columns hosting the 3-cycle in row r1; a third row completes an
        // order-3 subsquare iff it carries the remaining cyclic shift
        const std::int32_t xa = pos[r1][a];
        const std::int32_t xb = pos[r1][b];
        const std::int32_t xc = pos[r1][c];
        for (int r3 = r2 + 1; r3 < n; ++r3)
          if (square.at(r3, xa) == c && square.at(r3, xb) == a && square.at(r3, xc) == b) ++total;
      }
    }
  }
  return total;
}

TripleSet heavy_edge_subset(const LatinSquare& square, std::int64_t m) { return heavy_subset_impl(square, m); }
TripleSet heavy_edge_subset(const LatinRectangle& rect, std::int64_t m) { return heavy_subset_impl(rect, m); }
TripleSet heavy_edge_subset(const TripleSet& triples, std::int64_t m) { return heavy_subset_impl(triples, m); }

double expected_intercalates(int n) {
  if (n < 2) throw Error(Errc::NTooSmall, "expected_intercalates needs n >= 2", n);
  const double pairs = 0.5 * static_cast<double>(n) * (n - 1);
  const double nd = static_cast<double>(n);
  return 2.0 * pairs * pairs * pairs / (nd * nd * nd * nd);
}

IntercalateStats intercalate_stats(const std::vector<Intercalate>& intercalates) {
  IntercalateStats stats;
  stats.N = static_cast<std::int64_t>(intercalates.size());
  stats.N2 = shared_edge_pairs(intercalates);
  if (stats.N <= 24) {
    stats.Nprime = max_disjoint_family(intercalates, DisjointMode::Exact);
    stats.exact = true;
  } else {
    stats.Nprime = max_disjoint_family(intercalates, DisjointMode::Greedy);
    stats.exact = false;
  }
  return stats;
}
IntercalateStats intercalate_stats(const LatinSquare& square) {
  return intercalate_stats(enumerate_intercalates(square));
}
IntercalateStats intercalate_stats(const LatinRectangle& rect) {
  return intercalate_stats(enumerate_intercalates(rect));
}
IntercalateStats intercalate_stats(const TripleSet& triples) {
  return intercalate_stats(enumerate_intercalates(triples));
}

std::string stats_json(const IntercalateStats& stats) {
  nlohmann::json j;
  j["N"] = stats.N;
  j["N2"] = stats.N2;
  j["Nprime"] = stats.Nprime;
  j["exact"] = stats.exact;
  return j.dump();
}

}  // namespace latinlab
