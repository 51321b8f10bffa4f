#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "latinlab/error.hpp"

namespace latinlab {

/// An order-n Latin square. Symbols are stored 0-based; every row and every
/// column is a permutation of 0..n-1. All file formats and CLI output render
/// symbols 1-based.
class LatinSquare {
 public:
  LatinSquare(int n, std::vector<std::int32_t> cells);

  /// Skips validation; cells must already satisfy the invariants.
  static LatinSquare unchecked(int n, std::vector<std::int32_t> cells);

  int order() const { return n_; }
  std::int32_t at(int row, int col) const { return cells_[static_cast<std::size_t>(row) * n_ + col]; }
  std::span<const std::int32_t> row(int r) const {
    return {cells_.data() + static_cast<std::size_t>(r) * n_, static_cast<std::size_t>(n_)};
  }
  const std::vector<std::int32_t>& cells() const { return cells_; }

  bool operator==(const LatinSquare& other) const = default;

 private:
  LatinSquare() = default;
  int n_ = 0;
  std::vector<std::int32_t> cells_;
};

/// A k x n Latin rectangle, k <= n: every row is a permutation of 0..n-1 and
/// no symbol repeats within a column. k = n gives a Latin square; k = 0 is
/// the empty rectangle.
class LatinRectangle {
 public:
  LatinRectangle(int k, int n, std::vector<std::int32_t> cells);

  static LatinRectangle unchecked(int k, int n, std::vector<std::int32_t> cells);
  static LatinRectangle from_square(const LatinSquare& square, int rows);

  int rows_count() const { return k_; }
  int order() const { return n_; }
  std::int32_t at(int row, int col) const { return cells_[static_cast<std::size_t>(row) * n_ + col]; }
  std::span<const std::int32_t> row(int r) const {
    return {cells_.data() + static_cast<std::size_t>(r) * n_, static_cast<std::size_t>(n_)};
  }
  const std::vector<std::int32_t>& cells() const { return cells_; }

  LatinSquare to_square() const;

  bool operator==(const LatinRectangle& other) const = default;

 private:
  LatinRectangle() = default;
  int k_ = 0;
  int n_ = 0;
  std::vector<std::int32_t> cells_;
};

/// Validates an external 1-based grid as a Latin square. The grid must be
/// n x n with entries in 1..n. Rejections name the first violation in
/// row-major scan order: Errc::SymbolOutOfRange, Errc::DuplicateInRow(row,
/// symbol) or Errc::DuplicateInColumn(column, symbol), with 0-based indices
/// and the symbol as written in the input.
LatinSquare validate_square(const std::vector<std::vector<int>>& grid);

/// Same contract for a k x n rectangle (k <= n inferred from the shape).
LatinRectangle validate_rectangle(const std::vector<std::vector<int>>& grid);

/// Throws Errc::NotAPermutation unless `row` is a permutation of 0..n-1.
void require_permutation(std::span<const std::int32_t> row);

}  // namespace latinlab
