#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latinlab/rng.hpp"
#include "latinlab/triples.hpp"

namespace latinlab {

/// A subgraph of K_{n,n,n} on the row/column/symbol parts, stored as paired
/// adjacency bitmatrices per part pair so common-neighbourhood scans are
/// word-parallel.
class TripartiteGraph {
 public:
  static TripartiteGraph complete(int n);

  int order() const { return n_; }
  std::int64_t edges() const { return edges_; }

  bool has_rc(int r, int c) const { return test(rc_, r, c); }
  bool has_rs(int r, int s) const { return test(rs_, r, s); }
  bool has_cs(int c, int s) const { return test(cs_, c, s); }
  void remove_rc(int r, int c);
  void remove_rs(int r, int s);
  void remove_cs(int c, int s);

  /// Row r of the pairwise views, as bitset words (length words()).
  std::span<const std::uint64_t> row_cols(int r) const { return row(rc_, r); }   // cols adjacent to r
  std::span<const std::uint64_t> row_syms(int r) const { return row(rs_, r); }   // syms adjacent to r
  std::span<const std::uint64_t> col_rows(int c) const { return row(cr_, c); }   // rows adjacent to c
  std::span<const std::uint64_t> col_syms(int c) const { return row(cs_, c); }   // syms adjacent to c
  std::span<const std::uint64_t> sym_rows(int s) const { return row(sr_, s); }   // rows adjacent to s
  std::span<const std::uint64_t> sym_cols(int s) const { return row(sc_, s); }   // cols adjacent to s

  int words() const { return words_; }

 private:
  TripartiteGraph() = default;
  bool test(const std::vector<std::uint64_t>& m, int a, int b) const {
    return (m[static_cast<std::size_t>(a) * words_ + b / 64] >> (b % 64)) & 1;
  }
  std::span<const std::uint64_t> row(const std::vector<std::uint64_t>& m, int a) const {
    return {m.data() + static_cast<std::size_t>(a) * words_, static_cast<std::size_t>(words_)};
  }
  void clear(std::vector<std::uint64_t>& m, int a, int b) {
    m[static_cast<std::size_t>(a) * words_ + b / 64] &= ~(1ULL << (b % 64));
  }

  int n_ = 0;
  int words_ = 0;
  std::int64_t edges_ = 0;
  // six views: rc/cr, rs/sr, cs/sc (each pair mirrors one bipartite graph)
  std::vector<std::uint64_t> rc_, cr_, rs_, sr_, cs_, sc_;
};

struct TrpTraceRow {
  int step = 0;               // number of triangles removed so far
  std::int64_t edges = 0;     // e(G) after the removal
  std::int64_t triangles = 0; // triangles remaining after the removal
};

/// Outcome of the triangle removal process: the ordered sequence of removed
/// triangles, or the star token when the graph ran out of triangles before
/// step m (the removed prefix is still reported).
struct TrpOutcome {
  bool star = false;
  OrderedTripleSet removed;
  std::vector<TrpTraceRow> trace;  // filled only when requested
};

/// Runs m steps of the 3-partite triangle removal process on K_{n,n,n}:
/// repeatedly selects a uniformly random triangle of the current graph and
/// removes its three edges. Requires 0 <= m <= n^2.
TrpOutcome trp_run(int n, int m, Rng& rng, bool record_trace = false);

/// Each of the n^3 triples included independently with probability p.
std::vector<Triple> sample_binomial_hypergraph(int n, double p, Rng& rng);

/// The G* pruning: keeps exactly the triples that intersect no other input
/// triple in >= 2 coordinates, deleted in one simultaneous pass (duplicates
/// count as conflicting). The result is always a valid partial Latin square.
TripleSet prune_conflicts(int n, const std::vector<Triple>& triples);

/// Graph left uncovered by a partial Latin square: the edges of K_{n,n,n}
/// not contained in any of its triples.
TripartiteGraph uncovered_graph(int n, const std::vector<Triple>& triples);

/// Largest relative deviation of common-neighbourhood sizes from the density
/// prediction: the smallest eps such that every vertex set A outside part i
/// with |A| <= h has (1 +- eps)(e(G)/(3n^2))^|A| n common neighbours in part
/// i. Exhaustive for h <= 2; h == 3 additionally samples size-3 sets
/// (approximate); h >= 4 throws Errc::HTooLarge. With density 0 the
/// prediction is 0: matching zero counts contribute 0, a nonzero count
/// returns +infinity.
double quasirandom_deviation(const TripartiteGraph& g, int h);
double quasirandom_deviation(const TripartiteGraph& g, int h, std::int64_t size3_samples, Rng& rng);

/// Max over all removal prefixes i <= m of quasirandom_deviation(G(P_i), h),
/// replaying the recorded removal sequence from the complete graph.
double trace_quasirandomness(int n, const OrderedTripleSet& removed, int h);

/// Exact expectation of the intercalate count of G* when G ~ binomial with
/// edge probability alpha/n: 2 C(n,2)^3 (alpha/n)^4 (1-alpha/n)^(12(n-1)-8).
double expected_gstar_intercalates(int n, double alpha);

/// First-order approximation e^(-12 alpha) alpha^4 n^2 / 4 of the same
/// expectation.
double gstar_intercalates_asymptotic(int n, double alpha);

/// Exact expected number of unordered pairs of distinct intercalates of the
/// binomial hypergraph G sharing at least one edge: pairs sharing exactly one
/// edge appear with probability p^7 and pairs sharing two edges with p^6,
/// counted exactly over the 2 C(n,2)^3 patterns.
double expected_shared_edge_pairs(int n, double alpha);

}  // namespace latinlab
