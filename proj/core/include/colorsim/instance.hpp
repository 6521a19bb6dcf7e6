#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "colorsim/graph.hpp"

namespace colorsim {

using Color = std::uint64_t;

/// Sorted duplicate-free set of color ids.
struct Palette {
  std::vector<Color> colors;

  static Palette from_unsorted(std::vector<Color> c);

  std::size_t size() const { return colors.size(); }
  bool contains(Color c) const;
  Color operator[](std::size_t i) const { return colors[i]; }
};

/// Graph plus per-vertex palettes. The construction-time contract is
/// |palette(v)| >= max(deg(v), palette_floor) + 1 for every vertex.
class ListColoringInstance {
public:
  ListColoringInstance() = default;
  ListColoringInstance(Graph graph, std::vector<Palette> palettes,
                       std::uint64_t palette_floor);

  const Graph& graph() const { return graph_; }
  const Palette& palette(Vertex v) const { return palettes_[v]; }
  const std::vector<Palette>& palettes() const { return palettes_; }
  std::uint64_t palette_floor() const { return palette_floor_; }
  Vertex n() const { return graph_.n(); }
  std::uint32_t delta() const { return graph_.max_degree(); }

  /// Union of all palettes, sorted.
  std::vector<Color> color_universe() const;

  /// Sub-instance over `vertices` with palettes transformed per vertex.
  /// The caller supplies each sub-vertex's palette (already restricted).
  ListColoringInstance restricted(const std::vector<Vertex>& vertices,
                                  std::vector<Palette> sub_palettes,
                                  std::uint64_t sub_floor,
                                  std::vector<Vertex>* orig_ids) const;

private:
  Graph graph_;
  std::vector<Palette> palettes_;
  std::uint64_t palette_floor_ = 0;
};

constexpr Color kUncolored = std::numeric_limits<Color>::max();

/// Partial vertex coloring; kUncolored marks unassigned vertices.
struct Coloring {
  std::vector<Color> assignment;

  explicit Coloring(std::size_t n = 0) : assignment(n, kUncolored) {}
  bool assigned(Vertex v) const { return assignment[v] != kUncolored; }
  bool total() const;
  bool operator==(const Coloring&) const = default;
};

struct ValidityReport {
  std::vector<std::pair<Vertex, Vertex>> conflict_edges;
  std::vector<Vertex> palette_violations;

  bool empty() const {
    return conflict_edges.empty() && palette_violations.empty();
  }
};

/// Empty report iff the partial coloring is proper and palette-respecting.
ValidityReport validate_coloring(const ListColoringInstance& instance,
                                 const Coloring& coloring);

/// palette(v) minus the colors taken by v's colored neighbors.
std::vector<Color> residual_palette(const Graph& g,
                                    const std::vector<Palette>& palettes,
                                    const Coloring& coloring, Vertex v);

}  // namespace colorsim
