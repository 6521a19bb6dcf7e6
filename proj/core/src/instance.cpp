#include "colorsim/instance.hpp"

#include <algorithm>
#include <string>

#include "colorsim/errors.hpp"

namespace colorsim {

Palette Palette::from_unsorted(std::vector<Color> c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return Palette{std::move(c)};
}

bool Palette::contains(Color c) const {
  return std::binary_search(colors.begin(), colors.end(), c);
}

ListColoringInstance::ListColoringInstance(Graph graph,
                                           std::vector<Palette> palettes,
                                           std::uint64_t palette_floor)
    : graph_(std::move(graph)),
      palettes_(std::move(palettes)),
      palette_floor_(palette_floor) {
  if (palettes_.size() != graph_.n()) {
    throw ConfigError("palette count does not match vertex count");
  }
  for (Vertex v = 0; v < graph_.n(); ++v) {
    std::uint64_t need =
        std::max<std::uint64_t>(graph_.degree(v), palette_floor_) + 1;
    if (palettes_[v].size() < need) {
      throw ConfigError("palette of vertex " + std::to_string(v) + " has " +
                        std::to_string(palettes_[v].size()) +
                        " colors, needs " + std::to_string(need));
    }
  }
}

std::vector<Color> ListColoringInstance::color_universe() const {
  std::vector<Color> all;
  for (const auto& p : palettes_) {
    all.insert(all.end(), p.colors.begin(), p.colors.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

ListColoringInstance ListColoringInstance::restricted(
    const std::vector<Vertex>& vertices, std::vector<Palette> sub_palettes,
    std::uint64_t sub_floor, std::vector<Vertex>* orig_ids) const {
  auto [sub, ids] = graph_.induced(vertices);
  if (orig_ids) *orig_ids = ids;
  return ListColoringInstance(std::move(sub), std::move(sub_palettes),
                              sub_floor);
}

bool Coloring::total() const {
  return std::all_of(assignment.begin(), assignment.end(),
                     [](Color c) { return c != kUncolored; });
}

std::vector<Color> residual_palette(const Graph& g,
                                    const std::vector<Palette>& palettes,
                                    const Coloring& coloring, Vertex v) {
  std::vector<Color> taken;
  for (Vertex u : g.neighbors(v)) {
    if (coloring.assigned(u)) taken.push_back(coloring.assignment[u]);
  }
  std::sort(taken.begin(), taken.end());
  std::vector<Color> result;
  result.reserve(palettes[v].size());
  for (Color c : palettes[v].colors) {
    if (!std::binary_search(taken.begin(), taken.end(), c)) {
      result.push_back(c);
    }
  }
  return result;
}

ValidityReport validate_coloring(const ListColoringInstance& instance,
                                 const Coloring& coloring) {
  ValidityReport report;
  const Graph& g = instance.graph();
  for (Vertex v = 0; v < g.n(); ++v) {
    if (!coloring.assigned(v)) continue;
    Color c = coloring.assignment[v];
    if (!instance.palette(v).contains(c)) {
      report.palette_violations.push_back(v);
    }
    for (Vertex u : g.neighbors(v)) {
      if (u > v && coloring.assigned(u) && coloring.assignment[u] == c) {
        report.conflict_edges.emplace_back(v, u);
      }
    }
  }
  return report;
}

}  // namespace colorsim
