#include "colorsim/shattering.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "colorsim/errors.hpp"
#include "colorsim/greedy.hpp"

namespace colorsim {

nlohmann::ordered_json BadSetReport::to_json() const {
  nlohmann::ordered_json j;
  j["componentSizes"] = component_sizes;
  j["maxComponentSize"] = max_component_size;
  j["edgesWithinBad"] = edges_within_bad;
  j["thresholdComponent"] = threshold_component;
  j["thresholdPolylog"] = threshold_polylog;
  j["thresholdEdges"] = threshold_edges;
  j["componentPass"] = component_pass;
  j["edgesPass"] = edges_pass;
  return j;
}

BadSetReport analyze_bad_set(const Graph& graph,
                             const std::vector<Vertex>& bad_set, double c,
                             double c_prime, double c_edge) {
  BadSetReport report;
  std::vector<std::uint8_t> bad(graph.n(), 0);
  for (Vertex v : bad_set) bad[v] = 1;

  std::vector<std::uint8_t> seen(graph.n(), 0);
  for (Vertex start : bad_set) {
    if (seen[start]) continue;
    seen[start] = 1;
    std::uint64_t size = 0;
    std::deque<Vertex> queue{start};
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      ++size;
      for (Vertex u : graph.neighbors(v)) {
        if (!bad[u]) continue;
        if (u > v) ++report.edges_within_bad;
        if (!seen[u]) {
          seen[u] = 1;
          queue.push_back(u);
        }
      }
    }
    report.component_sizes.push_back(size);
    report.max_component_size = std::max(report.max_component_size, size);
  }
  std::sort(report.component_sizes.begin(), report.component_sizes.end());

  const double n = static_cast<double>(std::max<Vertex>(graph.n(), 2));
  const double delta = static_cast<double>(
      std::max<std::uint32_t>(graph.max_degree(), 2));
  report.threshold_component =
      (c_prime / c) * std::pow(delta, 2.0 * c) * (std::log(n) / std::log(delta));
  report.threshold_polylog = c_prime * std::pow(std::log2(n), 3.0);
  report.threshold_edges = c_edge * static_cast<double>(graph.n());
  report.component_pass =
      static_cast<double>(report.max_component_size) <= report.threshold_component;
  report.edges_pass =
      static_cast<double>(report.edges_within_bad) <= report.threshold_edges;
  return report;
}

Coloring color_components(const ListColoringInstance& instance,
                          const std::vector<Vertex>& bad_set,
                          Coloring so_far) {
  const Graph& g = instance.graph();
  // Counting guarantee: after pruning, every bad vertex must keep at least
  // deg-within-bad + 1 colors.
  for (Vertex v : bad_set) {
    std::uint64_t taken = 0, within = 0;
    for (Vertex u : g.neighbors(v)) {
      if (so_far.assigned(u)) ++taken;
      else ++within;
    }
    if (instance.palette(v).size() < taken + within + 1 &&
        instance.palette(v).size() < g.degree(v) + 1) {
      throw PaletteExhausted("bad vertex " + std::to_string(v) +
                             " cannot retain enough colors");
    }
  }
  std::vector<Vertex> order = bad_set;
  std::sort(order.begin(), order.end());
  greedy_extend(instance, order, so_far);
  return so_far;
}

}  // namespace colorsim
