#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "latinlab/square.hpp"

namespace latinlab {

/// One cell of a (partial) Latin square in the 3-partite hypergraph view:
/// an edge joining row r, column c and symbol s, each 0-based.
struct Triple {
  std::int32_t row = 0;
  std::int32_t col = 0;
  std::int32_t sym = 0;

  auto operator<=>(const Triple&) const = default;
};

/// A partial Latin square of order n as a set of triples: any two distinct
/// triples agree in at most one coordinate. Triples are kept sorted.
class TripleSet {
 public:
  TripleSet() = default;
  /// Validates the pairwise-agreement invariant; throws
  /// Errc::ConflictingTriples naming the offending coordinates.
  TripleSet(int n, std::vector<Triple> triples);

  static TripleSet unchecked(int n, std::vector<Triple> sorted_triples);

  int order() const { return n_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  const std::vector<Triple>& triples() const { return triples_; }
  bool contains(const Triple& t) const;

  bool operator==(const TripleSet& other) const = default;

 private:
  int n_ = 0;
  std::vector<Triple> triples_;
};

/// A partial Latin square together with an insertion order on its triples
/// (the order the triangle removal process produced them in).
class OrderedTripleSet {
 public:
  OrderedTripleSet() = default;
  explicit OrderedTripleSet(int n) : n_(n) {}
  OrderedTripleSet(int n, std::vector<Triple> sequence);

  void push_back(const Triple& t) { sequence_.push_back(t); }

  int order() const { return n_; }
  std::size_t size() const { return sequence_.size(); }
  const std::vector<Triple>& sequence() const { return sequence_; }

  /// The underlying unordered set (validates the invariant).
  TripleSet as_set() const;

  bool operator==(const OrderedTripleSet& other) const = default;

 private:
  int n_ = 0;
  std::vector<Triple> sequence_;
};

TripleSet triple_view(const LatinSquare& square);
TripleSet triple_view(const LatinRectangle& rect);

/// Inverse of triple_view. Succeeds iff every cell required by the kind is
/// covered exactly once; otherwise throws Errc::IncompleteCover. For the
/// rectangle kind the row count is the number of distinct rows present, and
/// rows must form a prefix 0..k-1.
LatinSquare grid_view_square(const TripleSet& triples);
LatinRectangle grid_view_rectangle(const TripleSet& triples);

/// The triples of `square` with row, column and symbol all < k
/// (the subcube induced by the first k rows, columns and symbols).
TripleSet induce_subcube(const LatinSquare& square, int k);

}  // namespace latinlab
