#include "latinlab/square.hpp"

#include <algorithm>
#include <string>

namespace latinlab {

namespace {

std::vector<std::int32_t> check_grid(const std::vector<std::vector<int>>& grid, int k, int n) {
  std::vector<std::int32_t> cells(static_cast<std::size_t>(k) * n);
  // seen_row/seen_col track symbols already placed; scan is row-major so the
  // first violation reported is deterministic.
  std::vector<char> seen_col(static_cast<std::size_t>(n) * n, 0);
  std::vector<char> seen_row(static_cast<std::size_t>(n), 0);
  for (int r = 0; r < k; ++r) {
    if (static_cast<int>(grid[r].size()) != n)
      throw Error(Errc::ParseError, "row " + std::to_string(r) + " has wrong length", r);
    std::fill(seen_row.begin(), seen_row.end(), 0);
    for (int c = 0; c < n; ++c) {
      const int external = grid[r][c];
      if (external < 1 || external > n)
        throw Error(Errc::SymbolOutOfRange,
                    "symbol " + std::to_string(external) + " out of range at (" + std::to_string(r) +
                        "," + std::to_string(c) + ")",
                    r, c);
      const int s = external - 1;
      if (seen_row[s])
        throw Error(Errc::DuplicateInRow, "symbol " + std::to_string(external) + " repeated in row " + std::to_string(r),
                    r, external);
      if (seen_col[static_cast<std::size_t>(c) * n + s])
        throw Error(Errc::DuplicateInColumn,
                    "symbol " + std::to_string(external) + " repeated in column " + std::to_string(c), c, external);
      seen_row[s] = 1;
      seen_col[static_cast<std::size_t>(c) * n + s] = 1;
      cells[static_cast<std::size_t>(r) * n + c] = s;
    }
  }
  return cells;
}

std::vector<std::vector<int>> to_external(int k, int n, const std::vector<std::int32_t>& cells) {
  std::vector<std::vector<int>> grid(k, std::vector<int>(n));
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < n; ++c) grid[r][c] = cells[static_cast<std::size_t>(r) * n + c] + 1;
  return grid;
}

}  // namespace

LatinSquare::LatinSquare(int n, std::vector<std::int32_t> cells) {
  if (n < 1) throw Error(Errc::InvalidParams, "order must be >= 1");
  if (cells.size() != static_cast<std::size_t>(n) * n)
    throw Error(Errc::InvalidParams, "cell count does not match order");
  std::vector<std::vector<int>> grid(n, std::vector<int>(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) grid[r][c] = cells[static_cast<std::size_t>(r) * n + c] + 1;
  n_ = n;
  cells_ = check_grid(grid, n, n);
}

LatinSquare LatinSquare::unchecked(int n, std::vector<std::int32_t> cells) {
  LatinSquare s;
  s.n_ = n;
  s.cells_ = std::move(cells);
  return s;
}

LatinRectangle::LatinRectangle(int k, int n, std::vector<std::int32_t> cells) {
  if (n < 1 || k < 0 || k > n) throw Error(Errc::InvalidParams, "need 0 <= k <= n, n >= 1");
  if (cells.size() != static_cast<std::size_t>(k) * n)
    throw Error(Errc::InvalidParams, "cell count does not match shape");
  k_ = k;
  n_ = n;
  cells_ = k == 0 ? std::move(cells) : check_grid(to_external(k, n, cells), k, n);
}

LatinRectangle LatinRectangle::unchecked(int k, int n, std::vector<std::int32_t> cells) {
  LatinRectangle r;
  r.k_ = k;
  r.n_ = n;
  r.cells_ = std::move(cells);
  return r;
}

LatinRectangle LatinRectangle::from_square(const LatinSquare& square, int rows) {
  if (rows < 0 || rows > square.order())
    throw Error(Errc::KOutOfRange, "row count outside 0..n", rows);
  std::vector<std::int32_t> cells(square.cells().begin(),
                                  square.cells().begin() + static_cast<std::size_t>(rows) * square.order());
  return unchecked(rows, square.order(), std::move(cells));
}

LatinSquare LatinRectangle::to_square() const {
  if (k_ != n_) throw Error(Errc::IncompleteCover, "rectangle is not square: k != n", k_, n_);
  return LatinSquare::unchecked(n_, cells_);
}

LatinSquare validate_square(const std::vector<std::vector<int>>& grid) {
  const int n = static_cast<int>(grid.size());
  if (n < 1) throw Error(Errc::ParseError, "empty grid");
  return LatinSquare::unchecked(n, check_grid(grid, n, n));
}

LatinRectangle validate_rectangle(const std::vector<std::vector<int>>& grid) {
  const int k = static_cast<int>(grid.size());
  if (k < 1) throw Error(Errc::ParseError, "empty grid");
  const int n = static_cast<int>(grid[0].size());
  if (k > n) throw Error(Errc::InvalidParams, "more rows than columns", k, n);
  return LatinRectangle::unchecked(k, n, check_grid(grid, k, n));
}

void require_permutation(std::span<const std::int32_t> row) {
  const int n = static_cast<int>(row.size());
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int c = 0; c < n; ++c) {
    const std::int32_t s = row[c];
    if (s < 0 || s >= n || seen[s]) throw Error(Errc::NotAPermutation, "row is not a permutation", c, s);
    seen[s] = 1;
  }
}

}  // namespace latinlab
