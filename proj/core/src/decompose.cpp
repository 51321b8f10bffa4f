#include "latinlab/decompose.hpp"

#include <algorithm>
#include <set>

namespace latinlab {

Hypergraph3::Hypergraph3(int vertex_count, std::vector<std::array<std::int32_t, 3>> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count < 0) throw Error(Errc::InvalidParams, "negative vertex count");
  std::set<std::array<std::int32_t, 3>> seen;
  for (auto& e : edges_) {
    std::sort(e.begin(), e.end());
    if (e[0] < 0 || e[2] >= vertex_count_ || e[0] == e[1] || e[1] == e[2])
      throw Error(Errc::InvalidParams, "edges must have three distinct vertices in range", e[0], e[2]);
    if (!seen.insert(e).second) throw Error(Errc::InvalidParams, "multi-edge rejected", e[0], e[1]);
  }
}

StarMatchingPartition star_matching_partition(const Hypergraph3& h, int r) {
  if (r < 1) throw Error(Errc::RNonPositive, "threshold r must be >= 1", r);
  const std::size_t m = h.edge_count();
  StarMatchingPartition result;

  std::vector<char> removed(m, 0);
  std::vector<std::int64_t> degree(static_cast<std::size_t>(h.vertex_count()), 0);
  for (const auto& e : h.edges())
    for (std::int32_t v : e) ++degree[v];

  // star extraction: peel exactly r edges off any vertex of degree >= r
  for (;;) {
    int pivot = -1;
    for (int v = 0; v < h.vertex_count(); ++v)
      if (degree[v] >= r) {
        pivot = v;
        break;
      }
    if (pivot < 0) break;
    HypergraphPart star{PartKind::Star, {}};
    for (std::size_t i = 0; i < m && static_cast<int>(star.edge_indices.size()) < r; ++i) {
      if (removed[i]) continue;
      const auto& e = h.edges()[i];
      if (e[0] != pivot && e[1] != pivot && e[2] != pivot) continue;
      star.edge_indices.push_back(i);
      removed[i] = 1;
      for (std::int32_t v : e) --degree[v];
    }
    result.parts.push_back(std::move(star));
    ++result.stars;
  }

  // remainder has max degree < r; greedy proper edge-colouring
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < m; ++i)
    if (!removed[i]) rest.push_back(i);

  std::vector<int> colour(m, -1);
  int colours = 0;
  for (std::size_t idx : rest) {
    const auto& e = h.edges()[idx];
    // colours blocked by already-coloured intersecting edges
    std::vector<char> blocked(static_cast<std::size_t>(colours), 0);
    for (std::size_t other : rest) {
      if (other == idx) break;  // rest is in index order; later edges are uncoloured
      if (colour[other] < 0) continue;
      const auto& f = h.edges()[other];
      bool meets = false;
      for (std::int32_t v : e)
        for (std::int32_t w : f)
          if (v == w) meets = true;
      if (meets) blocked[colour[other]] = 1;
    }
    int chosen = 0;
    while (chosen < colours && blocked[chosen]) ++chosen;
    if (chosen == colours) ++colours;
    colour[idx] = chosen;
  }
  result.colours_used = colours;

  // split colour classes into sub-matchings of at most r edges
  for (int c = 0; c < colours; ++c) {
    HypergraphPart part{PartKind::Matching, {}};
    for (std::size_t idx : rest) {
      if (colour[idx] != c) continue;
      part.edge_indices.push_back(idx);
      if (static_cast<int>(part.edge_indices.size()) == r) {
        result.parts.push_back(part);
        ++result.matchings;
        part.edge_indices.clear();
      }
    }
    if (!part.edge_indices.empty()) {
      result.parts.push_back(std::move(part));
      ++result.matchings;
    }
  }
  return result;
}

std::vector<int> greedy_edge_colouring(const Hypergraph3& h) {
  const std::size_t m = h.edge_count();
  std::vector<int> colour(m, -1);
  int colours = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<char> blocked(static_cast<std::size_t>(colours), 0);
    for (std::size_t j = 0; j < i; ++j) {
      const auto& e = h.edges()[i];
      const auto& f = h.edges()[j];
      bool meets = false;
      for (std::int32_t v : e)
        for (std::int32_t w : f)
          if (v == w) meets = true;
      if (meets) blocked[colour[j]] = 1;
    }
    int chosen = 0;
    while (chosen < colours && blocked[chosen]) ++chosen;
    if (chosen == colours) ++colours;
    colour[i] = chosen;
  }
  return colour;
}

}  // namespace latinlab
