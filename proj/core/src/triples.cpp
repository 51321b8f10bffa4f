#include "latinlab/triples.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

namespace latinlab {

namespace {

std::uint64_t pack_pair(int axis, std::int32_t a, std::int32_t b) {
  return (static_cast<std::uint64_t>(axis) << 62) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 31) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(b));
}

void check_triples(int n, const std::vector<Triple>& triples) {
  std::unordered_set<std::uint64_t> pairs;
  pairs.reserve(triples.size() * 3);
  for (const Triple& t : triples) {
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n || t.sym < 0 || t.sym >= n)
      throw Error(Errc::SymbolOutOfRange, "triple coordinate outside 0..n-1", t.row, t.col);
    // Two triples agreeing in two coordinates share one of these pairs.
    if (!pairs.insert(pack_pair(0, t.row, t.col)).second)
      throw Error(Errc::ConflictingTriples, "two triples share row and column", t.row, t.col);
    if (!pairs.insert(pack_pair(1, t.row, t.sym)).second)
      throw Error(Errc::ConflictingTriples, "two triples share row and symbol", t.row, t.sym);
    if (!pairs.insert(pack_pair(2, t.col, t.sym)).second)
      throw Error(Errc::ConflictingTriples, "two triples share column and symbol", t.col, t.sym);
  }
}

}  // namespace

TripleSet::TripleSet(int n, std::vector<Triple> triples) : n_(n), triples_(std::move(triples)) {
  if (n < 0) throw Error(Errc::InvalidParams, "negative order");
  std::sort(triples_.begin(), triples_.end());
  check_triples(n_, triples_);
}

TripleSet TripleSet::unchecked(int n, std::vector<Triple> sorted_triples) {
  TripleSet s;
  s.n_ = n;
  s.triples_ = std::move(sorted_triples);
  return s;
}

bool TripleSet::contains(const Triple& t) const {
  return std::binary_search(triples_.begin(), triples_.end(), t);
}

OrderedTripleSet::OrderedTripleSet(int n, std::vector<Triple> sequence)
    : n_(n), sequence_(std::move(sequence)) {
  check_triples(n_, sequence_);
}

TripleSet OrderedTripleSet::as_set() const {
  std::vector<Triple> sorted = sequence_;
  std::sort(sorted.begin(), sorted.end());
  return TripleSet(n_, std::move(sorted));
}

TripleSet triple_view(const LatinSquare& square) {
  const int n = square.order();
  std::vector<Triple> triples;
  triples.reserve(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) triples.push_back({r, c, square.at(r, c)});
  std::sort(triples.begin(), triples.end());
  return TripleSet::unchecked(n, std::move(triples));
}

TripleSet triple_view(const LatinRectangle& rect) {
  const int n = rect.order();
  std::vector<Triple> triples;
  triples.reserve(static_cast<std::size_t>(rect.rows_count()) * n);
  for (int r = 0; r < rect.rows_count(); ++r)
    for (int c = 0; c < n; ++c) triples.push_back({r, c, rect.at(r, c)});
  std::sort(triples.begin(), triples.end());
  return TripleSet::unchecked(n, std::move(triples));
}

namespace {

std::vector<std::int32_t> cover_cells(const TripleSet& triples, int k, int n) {
  std::vector<std::int32_t> cells(static_cast<std::size_t>(k) * n, -1);
  for (const Triple& t : triples.triples()) {
    if (t.row >= k)
      throw Error(Errc::IncompleteCover, "triple row outside requested shape", t.row, t.col);
    cells[static_cast<std::size_t>(t.row) * n + t.col] = t.sym;
  }
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < n; ++c)
      if (cells[static_cast<std::size_t>(r) * n + c] < 0)
        throw Error(Errc::IncompleteCover, "cell not covered", r, c);
  return cells;
}

}  // namespace

LatinSquare grid_view_square(const TripleSet& triples) {
  const int n = triples.order();
  if (triples.size() != static_cast<std::size_t>(n) * n)
    throw Error(Errc::IncompleteCover, "triple count is not n^2", static_cast<long>(triples.size()));
  return LatinSquare::unchecked(n, cover_cells(triples, n, n));
}

LatinRectangle grid_view_rectangle(const TripleSet& triples) {
  const int n = triples.order();
  if (n == 0 || triples.size() % n != 0)
    throw Error(Errc::IncompleteCover, "triple count is not a multiple of n", static_cast<long>(triples.size()));
  const int k = static_cast<int>(triples.size() / n);
  return LatinRectangle::unchecked(k, n, cover_cells(triples, k, n));
}

TripleSet induce_subcube(const LatinSquare& square, int k) {
  const int n = square.order();
  if (k < 1 || k > n) throw Error(Errc::KOutOfRange, "need 1 <= k <= n", k, n);
  std::vector<Triple> kept;
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      const std::int32_t s = square.at(r, c);
      if (s < k) kept.push_back({r, c, s});
    }
  std::sort(kept.begin(), kept.end());
  return TripleSet::unchecked(n, std::move(kept));
}

}  // namespace latinlab
