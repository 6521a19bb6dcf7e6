#pragma once

#include <cstdint>
#include <vector>

#include "colorsim/instance.hpp"

#include <json.hpp>

namespace colorsim {

struct BadSetReport {
  std::vector<std::uint64_t> component_sizes;
  std::uint64_t max_component_size = 0;
  std::uint64_t edges_within_bad = 0;
  double threshold_component = 0.0;  // (c'/c) * delta^(2c) * log_delta(n)
  double threshold_polylog = 0.0;    // c' * log2(n)^3, the alternate bound
  double threshold_edges = 0.0;      // c_edge * n
  bool component_pass = true;
  bool edges_pass = true;

  nlohmann::ordered_json to_json() const;
};

/// BFS component statistics of the subgraph induced by `bad_set`, checked
/// against the shattering thresholds.
BadSetReport analyze_bad_set(const Graph& graph,
                             const std::vector<Vertex>& bad_set, double c,
                             double c_prime, double c_edge = 1.0);

/// Completes `so_far` over the bad set, component by component, greedily in
/// ascending id. Available colors exclude everything already taken by
/// neighbors. Throws PaletteExhausted on a counting-precondition breach.
Coloring color_components(const ListColoringInstance& instance,
                          const std::vector<Vertex>& bad_set,
                          Coloring so_far);

}  // namespace colorsim
