#pragma once

#include <cstdint>
#include <optional>

#include "latinlab/square.hpp"

namespace latinlab {

/// A finite group for Cayley-table squares: either the boolean group
/// (Z/2Z)^q (order 2^q, cell = i XOR j) or the cyclic group Z/mZ
/// (cell = i + j mod m).
struct GroupSpec {
  enum class Kind { Boolean, Cyclic } kind = Kind::Cyclic;
  int parameter = 1;  // exponent q (boolean) or modulus m (cyclic)

  static GroupSpec boolean_group(int q) { return {Kind::Boolean, q}; }
  static GroupSpec cyclic(int m) { return {Kind::Cyclic, m}; }
};

/// Multiplication table of the group as a Latin square, with elements mapped
/// to 0..order-1 by their integer encoding (bitstring / residue). Resulting
/// order is guarded to 2^14.
LatinSquare group_square(const GroupSpec& spec);

/// The boolean square of exponent q has exactly k*C(k,2)/2 intercalates for
/// k = 2^q; this evaluates that closed form.
std::int64_t boolean_intercalate_count(int q);

/// Searches for an order-n Latin square with no intercalates. Odd n returns
/// the cyclic table (always intercalate-free); even n runs a backtracking
/// search over reduced squares (first row and column fixed to the identity),
/// which is exhaustive: nullopt certifies none exists. Guarded to n <= 9.
std::optional<LatinSquare> search_intercalate_free(int n);

/// Smallest power of two k with k*C(k,2)/2 >= (1+delta) n^2/4; grows like
/// n^(2/3). delta >= 0, n >= 2.
std::int64_t choose_k(double delta, int n);

}  // namespace latinlab
