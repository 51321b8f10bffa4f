#include "latinlab/permanent.hpp"

#include <algorithm>
#include <cmath>

namespace latinlab {

std::string uint128_to_string(uint128 value) {
  if (value == 0) return "0";
  std::string digits;
  while (value > 0) {
    digits += static_cast<char>('0' + static_cast<int>(value % 10));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

AvailabilityMatrix availability_matrix(const LatinRectangle& rect) {
  const int n = rect.order();
  if (n > 64) throw Error(Errc::SizeGuard, "availability masks support n <= 64", n);
  AvailabilityMatrix a;
  a.n = n;
  const std::uint64_t full = n == 64 ? ~0ULL : ((1ULL << n) - 1);
  a.col_mask.assign(static_cast<std::size_t>(n), full);
  for (int r = 0; r < rect.rows_count(); ++r)
    for (int c = 0; c < n; ++c) a.col_mask[c] &= ~(1ULL << rect.at(r, c));
  return a;
}

uint128 permanent_ryser(const std::vector<std::uint64_t>& row_masks, int n) {
  if (n < 0 || n > 30) throw Error(Errc::SizeGuard, "Ryser guarded to n <= 30", n);
  if (n == 0) return 1;
  if (static_cast<int>(row_masks.size()) != n)
    throw Error(Errc::InvalidParams, "row count does not match n");

  // Column masks over rows, so a Gray-code column toggle updates only the
  // row sums that column touches.
  std::vector<std::uint32_t> col_of_rows(static_cast<std::size_t>(n), 0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if ((row_masks[r] >> c) & 1) col_of_rows[c] |= 1u << r;

  // perm(A) = (-1)^n sum_{S subseteq cols} (-1)^{|S|} prod_r rowsum_r(S).
  // All arithmetic wraps modulo 2^128; the true permanent is < 2^128 for
  // n <= 30, so the wrapped total is exact.
  std::vector<std::uint64_t> row_sum(static_cast<std::size_t>(n), 0);
  int zero_rows = n;
  uint128 total = 0;
  int parity = 0;  // |S| mod 2
  const std::uint64_t subsets = 1ULL << n;
  for (std::uint64_t g = 1; g < subsets; ++g) {
    const int toggled = __builtin_ctzll(g);
    const bool adding = ((g >> toggled) & 2) == 0;
    // Gray code subset(g) = g ^ (g >> 1); bit `toggled` flips each step.
    std::uint32_t rows = col_of_rows[toggled];
    if (adding) {
      while (rows) {
        const int r = __builtin_ctz(rows);
        rows &= rows - 1;
        if (row_sum[r]++ == 0) --zero_rows;
      }
    } else {
      while (rows) {
        const int r = __builtin_ctz(rows);
        rows &= rows - 1;
        if (--row_sum[r] == 0) ++zero_rows;
      }
    }
    parity ^= 1;
    if (zero_rows > 0) continue;
    uint128 product = 1;
    for (int r = 0; r < n; ++r) product *= row_sum[r];
    total += parity ? static_cast<uint128>(0) - product : product;
  }
  if (n & 1) total = static_cast<uint128>(0) - total;
  return total;
}

uint128 count_row_extensions(const LatinRectangle& rect) {
  const int n = rect.order();
  if (rect.rows_count() >= n) throw Error(Errc::InvalidParams, "rectangle already square", rect.rows_count(), n);
  if (n > 30) throw Error(Errc::SizeGuard, "Ryser guarded to n <= 30", n);
  const AvailabilityMatrix a = availability_matrix(rect);
  return permanent_ryser(a.col_mask, n);
}

ExtensionBounds extension_bounds(const LatinRectangle& rect) {
  const int n = rect.order();
  const int k = rect.rows_count();
  if (k >= n) throw Error(Errc::InvalidParams, "rectangle already square", k, n);
  const double d = n - k;  // common row/column sum of the availability matrix
  ExtensionBounds b;
  b.bregman_upper = std::exp(static_cast<double>(n) / d * std::lgamma(d + 1.0));
  b.evf_lower = std::exp(static_cast<double>(n) * std::log(d / n) + std::lgamma(n + 1.0));
  return b;
}

}  // namespace latinlab
