#include "latinlab/constructions.hpp"

#include <vector>

namespace latinlab {

LatinSquare group_square(const GroupSpec& spec) {
  std::int64_t order = 0;
  if (spec.kind == GroupSpec::Kind::Boolean) {
    if (spec.parameter < 0) throw Error(Errc::InvalidParams, "exponent must be >= 0", spec.parameter);
    order = 1LL << spec.parameter;
  } else {
    if (spec.parameter < 1) throw Error(Errc::InvalidParams, "modulus must be >= 1", spec.parameter);
    order = spec.parameter;
  }
  if (order > (1 << 14)) throw Error(Errc::SizeGuard, "group square guarded to order <= 2^14", order);
  const int n = static_cast<int>(order);
  std::vector<std::int32_t> cells(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cells[static_cast<std::size_t>(i) * n + j] =
          spec.kind == GroupSpec::Kind::Boolean ? (i ^ j) : (i + j) % n;
  return LatinSquare::unchecked(n, std::move(cells));
}

std::int64_t boolean_intercalate_count(int q) {
  const std::int64_t k = 1LL << q;
  return k * (k * (k - 1) / 2) / 2;
}

namespace {

// Backtracking over reduced squares with on-the-fly intercalate pruning:
// placing (r,c)=s is rejected if some earlier row r2 already completes a 2x2
// pattern with it.
struct IntercalateFreeSearch {
  int n;
  std::vector<std::int32_t> cells;
  std::vector<std::uint64_t> row_used, col_used;
  std::vector<std::vector<std::int32_t>> pos;  // pos[r][s] = column of s in row r (filled rows)

  std::int32_t at(int r, int c) const { return cells[static_cast<std::size_t>(r) * n + c]; }

  bool creates_intercalate(int r, int c, int s) const {
    for (int r2 = 0; r2 < r; ++r2) {
      const std::int32_t s2 = at(r2, c);
      // the only possible partner column pairs s with s2 in both rows
      const std::int32_t c2 = pos[r2][s];
      if (c2 < 0 || c2 == c) continue;
      // cell (r, c2) is already placed iff c2 < c
      if (c2 < c && at(r, c2) == s2) return true;
    }
    return false;
  }

  bool descend(int cell, std::optional<LatinSquare>& found) {
    if (cell == n * n) {
      found = LatinSquare::unchecked(n, cells);
      return true;
    }
    const int r = cell / n;
    const int c = cell % n;
    if (r == 0) {  // first row fixed to identity
      place(r, c, c);
      if (descend(cell + 1, found)) return true;
      unplace(r, c, c);
      return false;
    }
    if (c == 0) {  // first column fixed to identity
      if ((row_used[r] >> r) & 1 || (col_used[0] >> r) & 1) return false;
      if (creates_intercalate(r, 0, r)) return false;
      place(r, 0, r);
      if (descend(cell + 1, found)) return true;
      unplace(r, 0, r);
      return false;
    }
    std::uint64_t free_syms = ~(row_used[r] | col_used[c]) & ((1ULL << n) - 1);
    while (free_syms) {
      const int s = __builtin_ctzll(free_syms);
      free_syms &= free_syms - 1;
      if (creates_intercalate(r, c, s)) continue;
      place(r, c, s);
      if (descend(cell + 1, found)) return true;
      unplace(r, c, s);
    }
    return false;
  }

  void place(int r, int c, int s) {
    cells[static_cast<std::size_t>(r) * n + c] = s;
    row_used[r] |= 1ULL << s;
    col_used[c] |= 1ULL << s;
    pos[r][s] = c;
  }
  void unplace(int r, int c, int s) {
    cells[static_cast<std::size_t>(r) * n + c] = -1;
    row_used[r] &= ~(1ULL << s);
    col_used[c] &= ~(1ULL << s);
    pos[r][s] = -1;
  }
};

}  // namespace

std::optional<LatinSquare> search_intercalate_free(int n) {
  if (n < 1 || n > 9) throw Error(Errc::SizeGuard, "search guarded to n <= 9", n);
  if (n == 1) return group_square(GroupSpec::cyclic(1));
  if (n % 2 == 1) return group_square(GroupSpec::cyclic(n));  // odd cyclic tables are intercalate-free
  IntercalateFreeSearch search;
  search.n = n;
  search.cells.assign(static_cast<std::size_t>(n) * n, -1);
  search.row_used.assign(static_cast<std::size_t>(n), 0);
  search.col_used.assign(static_cast<std::size_t>(n), 0);
  search.pos.assign(static_cast<std::size_t>(n), std::vector<std::int32_t>(n, -1));
  std::optional<LatinSquare> found;
  search.descend(0, found);
  return found;
}

std::int64_t choose_k(double delta, int n) {
  if (delta < 0.0) throw Error(Errc::InvalidParams, "delta must be >= 0");
  if (n < 2) throw Error(Errc::InvalidParams, "n must be >= 2", n);
  const double target = (1.0 + delta) * static_cast<double>(n) * n / 4.0;
  for (int q = 1;; ++q) {
    const std::int64_t k = 1LL << q;
    const double value = static_cast<double>(k) * (static_cast<double>(k) * (k - 1) / 2.0) / 2.0;
    if (value >= target) return k;
  }
}

}  // namespace latinlab
