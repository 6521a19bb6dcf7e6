#include "colorsim/graph.hpp"

#include <algorithm>
#include <string>

#include "colorsim/errors.hpp"

namespace colorsim {

Graph Graph::from_edges(Vertex n,
                        const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::vector<std::pair<Vertex, Vertex>> dir;
  dir.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u == v) {
      throw ParseError("self-loop on vertex " + std::to_string(u));
    }
    if (u >= n || v >= n) {
      throw ParseError("edge endpoint out of range: " + std::to_string(u) +
                       " " + std::to_string(v));
    }
    dir.emplace_back(u, v);
    dir.emplace_back(v, u);
  }
  std::sort(dir.begin(), dir.end());
  dir.erase(std::unique(dir.begin(), dir.end()), dir.end());

  Graph g;
  g.n_ = n;
  g.offsets_.assign(n + 1, 0);
  g.adjacency_.reserve(dir.size());
  for (const auto& [u, v] : dir) {
    g.offsets_[u + 1]++;
    g.adjacency_.push_back(v);
  }
  for (Vertex v = 0; v < n; ++v) {
    g.offsets_[v + 1] += g.offsets_[v];
    g.max_degree_ = std::max(g.max_degree_, g.offsets_[v + 1] - g.offsets_[v]);
  }
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::pair<Graph, std::vector<Vertex>> Graph::induced(
    const std::vector<Vertex>& vertices) const {
  std::vector<Vertex> ids = vertices;
  std::sort(ids.begin(), ids.end());
  std::vector<std::uint32_t> local(n_, UINT32_MAX);
  for (std::size_t i = 0; i < ids.size(); ++i) local[ids[i]] = static_cast<std::uint32_t>(i);

  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (Vertex u : neighbors(ids[i])) {
      if (u > ids[i] && local[u] != UINT32_MAX) {
        edges.emplace_back(static_cast<Vertex>(i), local[u]);
      }
    }
  }
  return {from_edges(static_cast<Vertex>(ids.size()), edges), std::move(ids)};
}

}  // namespace colorsim
