#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace colorsim {

using Vertex = std::uint32_t;

/// Undirected simple graph in CSR form. Adjacency lists are sorted,
/// symmetric, self-loop free and duplicate free; maxDegree is maintained at
/// construction. Read-only after construction, safe to share across workers.
class Graph {
public:
  Graph() = default;

  /// Builds from an edge list. Duplicate edges are collapsed; self-loops are
  /// rejected.
  static Graph from_edges(Vertex n,
                          const std::vector<std::pair<Vertex, Vertex>>& edges);

  Vertex n() const { return n_; }
  std::uint64_t edge_count() const { return adjacency_.size() / 2; }
  std::uint32_t degree(Vertex v) const {
    return offsets_[v + 1] - offsets_[v];
  }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v],
            adjacency_.data() + offsets_[v + 1]};
  }
  std::uint32_t max_degree() const { return max_degree_; }

  bool has_edge(Vertex u, Vertex v) const;

  /// Subgraph induced by `vertices` (ids need not be sorted). Returns the
  /// graph over local ids 0..k-1 plus the map local id -> original id.
  std::pair<Graph, std::vector<Vertex>> induced(
      const std::vector<Vertex>& vertices) const;

private:
  Vertex n_ = 0;
  std::vector<std::uint32_t> offsets_ = {0};
  std::vector<Vertex> adjacency_;
  std::uint32_t max_degree_ = 0;
};

}  // namespace colorsim
