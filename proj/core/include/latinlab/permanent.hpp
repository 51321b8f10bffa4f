#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latinlab/square.hpp"

namespace latinlab {

using uint128 = unsigned __int128;

std::string uint128_to_string(uint128 value);

/// The 0/1 availability matrix of a k x n rectangle: entry (c, s) = 1 iff
/// symbol s may still be placed in column c of the next row. Every row and
/// column sums to n - k. Rows are stored as symbol bitmasks (n <= 64).
struct AvailabilityMatrix {
  int n = 0;
  std::vector<std::uint64_t> col_mask;  // col_mask[c] = available symbols for column c

  bool at(int col, int sym) const { return (col_mask[col] >> sym) & 1; }
};

AvailabilityMatrix availability_matrix(const LatinRectangle& rect);

/// Exact permanent of a 0/1 matrix given as row bitmasks, by Ryser's formula
/// with Gray-code subset iteration. Guarded to n <= 30 subsets-wise
/// (Errc::SizeGuard); exact because the result fits 128 bits (n! < 2^128 for
/// n <= 30) and the inclusion-exclusion is evaluated modulo 2^128.
uint128 permanent_ryser(const std::vector<std::uint64_t>& row_masks, int n);

/// Number of ways to extend the rectangle by one full row: the permanent of
/// its availability matrix. Requires k < n and n <= 30.
uint128 count_row_extensions(const LatinRectangle& rect);

struct ExtensionBounds {
  double bregman_upper = 0;  // ((n-k)!)^(n/(n-k))
  double evf_lower = 0;      // ((n-k)/n)^n * n!
};

/// Permanent bounds for the (n-k)-regular availability matrix; always
/// evf_lower <= exact <= bregman_upper, with equality at k = n-1 and k = 0.
ExtensionBounds extension_bounds(const LatinRectangle& rect);

}  // namespace latinlab
