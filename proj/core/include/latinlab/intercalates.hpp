#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "latinlab/triples.hpp"

namespace latinlab {

/// A 2x2 Latin subsquare witness: rows r1 < r2 and columns c1 < c2 whose four
/// cells carry exactly two symbols in the swapped pattern
///   (r1,c1)=s1  (r1,c2)=s2
///   (r2,c1)=s2  (r2,c2)=s1,   s1 != s2.
struct Intercalate {
  std::int32_t r1 = 0, r2 = 0;
  std::int32_t c1 = 0, c2 = 0;
  std::int32_t s1 = 0, s2 = 0;

  auto operator<=>(const Intercalate&) const = default;
};

/// The four triples (edges) of an intercalate.
std::array<Triple, 4> intercalate_triples(const Intercalate& ic);

/// True iff the two intercalates share at least one triple.
bool intercalates_intersect(const Intercalate& a, const Intercalate& b);

/// Bundled intercalate statistics: the count N, the number N2 of unordered
/// pairs of distinct intercalates sharing a triple, and the size Nprime of a
/// maximum family of pairwise edge-disjoint intercalates (exact == false
/// marks a greedy lower bound). Always Nprime <= N and Nprime >= N - N2.
struct IntercalateStats {
  std::int64_t N = 0;
  std::int64_t N2 = 0;
  std::int64_t Nprime = 0;
  bool exact = true;
};

/// Number of 2-cycles of the symbol permutation mapping rowA to rowB
/// columnwise; this equals the intercalate count between the two rows.
/// Throws Errc::NotAPermutation if either row is not a permutation.
std::int64_t row_pair_count(std::span<const std::int32_t> row_a, std::span<const std::int32_t> row_b);

std::int64_t count_intercalates(const LatinSquare& square);
std::int64_t count_intercalates(const LatinRectangle& rect);
std::int64_t count_intercalates(const TripleSet& triples);
/// Arbitrary 3-partite triple systems (duplicate triples ignored); this is
/// the direct four-edge definition and does not assume the partial-Latin
/// invariant.
std::int64_t count_intercalates(int n, const std::vector<Triple>& triples);

/// All intercalates in ascending lexicographic order (r1, r2, c1, c2, ...).
std::vector<Intercalate> enumerate_intercalates(const LatinSquare& square);
std::vector<Intercalate> enumerate_intercalates(const LatinRectangle& rect);
std::vector<Intercalate> enumerate_intercalates(const TripleSet& triples);
std::vector<Intercalate> enumerate_intercalates(int n, const std::vector<Triple>& triples);

/// N2: unordered pairs of distinct intercalates sharing at least one triple.
std::int64_t shared_edge_pairs(const std::vector<Intercalate>& intercalates);
std::int64_t shared_edge_pairs(const LatinSquare& square);
std::int64_t shared_edge_pairs(const LatinRectangle& rect);
std::int64_t shared_edge_pairs(const TripleSet& triples);

enum class DisjointMode { Exact, Greedy };

/// N': maximum number of pairwise edge-disjoint intercalates. Exact mode is
/// branch-and-bound over the intersection graph and is guarded to at most 24
/// intercalates (Errc::TooLargeForExact beyond); greedy mode returns the
/// lexicographic-greedy maximal family size, a lower bound that still
/// satisfies N' >= N - N2.
std::int64_t max_disjoint_family(const std::vector<Intercalate>& intercalates, DisjointMode mode);
std::int64_t max_disjoint_family(const LatinSquare& square, DisjointMode mode);
std::int64_t max_disjoint_family(const LatinRectangle& rect, DisjointMode mode);
std::int64_t max_disjoint_family(const TripleSet& triples, DisjointMode mode);

/// N_F: intercalates containing at least one triple of F. Triples of F that
/// are absent from the host contribute nothing.
std::int64_t count_through_edges(const std::vector<Intercalate>& intercalates, const TripleSet& f);
std::int64_t count_through_edges(const LatinSquare& square, const TripleSet& f);
std::int64_t count_through_edges(const LatinRectangle& rect, const TripleSet& f);
std::int64_t count_through_edges(const TripleSet& triples, const TripleSet& f);

/// Good intercalates for a matching M: those containing exactly one triple of
/// M whose remaining row, column and symbol avoid every row, column and
/// symbol used by M. Throws Errc::NotAMatching unless M's triples are
/// pairwise disjoint in all three coordinates.
std::int64_t count_good(const std::vector<Intercalate>& intercalates, const TripleSet& m);
std::int64_t count_good(const LatinSquare& square, const TripleSet& m);
std::int64_t count_good(const LatinRectangle& rect, const TripleSet& m);
std::int64_t count_good(const TripleSet& triples, const TripleSet& m);

/// Number of 3x3 Latin subsquares: row triples and column triples whose nine
/// cells use exactly three symbols and form an order-3 Latin square. For
/// n = 3 this includes the square itself.
std::int64_t count_order3_subsquares(const LatinSquare& square);

/// Greedy maximum-coverage subset of m triples: step by step, pick the triple
/// covering the most not-yet-covered intercalates, breaking ties by
/// lexicographic triple order. Throws Errc::MTooLarge if m exceeds the number
/// of triples of the host.
TripleSet heavy_edge_subset(const LatinSquare& square, std::int64_t m);
TripleSet heavy_edge_subset(const LatinRectangle& rect, std::int64_t m);
TripleSet heavy_edge_subset(const TripleSet& triples, std::int64_t m);

/// Heuristic expectation 2*C(n,2)^3/n^4 for the intercalate count of a random
/// order-n Latin square under the independent-edge model. n >= 2
/// (Errc::NTooSmall below).
double expected_intercalates(int n);

/// N, N2 and N' in one pass. N' is exact when N <= 24, else greedy and
/// flagged inexact.
IntercalateStats intercalate_stats(const std::vector<Intercalate>& intercalates);
IntercalateStats intercalate_stats(const LatinSquare& square);
IntercalateStats intercalate_stats(const LatinRectangle& rect);
IntercalateStats intercalate_stats(const TripleSet& triples);

/// {"N":..,"N2":..,"Nprime":..,"exact":..}
std::string stats_json(const IntercalateStats& stats);

}  // namespace latinlab
