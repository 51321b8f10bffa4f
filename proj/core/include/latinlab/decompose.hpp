#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "latinlab/error.hpp"

namespace latinlab {

/// A 3-uniform hypergraph: edges are 3-element subsets of 0..vertex_count-1.
/// Multi-edges and degenerate edges are rejected at construction.
class Hypergraph3 {
 public:
  Hypergraph3(int vertex_count, std::vector<std::array<std::int32_t, 3>> edges);

  int vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::array<std::int32_t, 3>>& edges() const { return edges_; }

 private:
  int vertex_count_ = 0;
  std::vector<std::array<std::int32_t, 3>> edges_;  // each sorted ascending
};

enum class PartKind { Star, Matching };

struct HypergraphPart {
  PartKind kind = PartKind::Star;
  std::vector<std::size_t> edge_indices;  // indices into the input edge list
};

struct StarMatchingPartition {
  std::vector<HypergraphPart> parts;
  std::int64_t stars = 0;
  std::int64_t matchings = 0;
  int colours_used = 0;  // colours of the greedy proper edge-colouring stage
};

/// Partitions the edge set into at most m/r stars and at most 3r + m/r
/// matchings, each part holding at most r edges: while some vertex still has
/// degree >= r, extract r of its edges as a star (lowest vertex id first,
/// lowest edge index first); greedily properly edge-colour the remainder
/// (max degree < r, so at most 3(r-1)+1 colours) and split each colour class
/// into chunks of at most r edges. r >= 1 (Errc::RNonPositive below).
StarMatchingPartition star_matching_partition(const Hypergraph3& h, int r);

/// Greedy proper edge-colouring in edge-index order: edges sharing a vertex
/// get distinct colours. Returns one colour id per edge.
std::vector<int> greedy_edge_colouring(const Hypergraph3& h);

}  // namespace latinlab
