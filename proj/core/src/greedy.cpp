#include "colorsim/greedy.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "colorsim/errors.hpp"

namespace colorsim {

namespace {

Color smallest_available(const Palette& palette,
                         std::vector<Color>& taken_scratch) {
  std::sort(taken_scratch.begin(), taken_scratch.end());
  auto it = taken_scratch.begin();
  for (Color c : palette.colors) {
    while (it != taken_scratch.end() && *it < c) ++it;
    if (it == taken_scratch.end() || *it != c) return c;
  }
  return kUncolored;
}

}  // namespace

void greedy_extend(const ListColoringInstance& instance,
                   std::span<const Vertex> order, Coloring& base) {
  const Graph& g = instance.graph();
  std::vector<Color> taken;
  for (Vertex v : order) {
    if (base.assigned(v)) continue;
    taken.clear();
    for (Vertex u : g.neighbors(v)) {
      if (base.assigned(u)) taken.push_back(base.assignment[u]);
    }
    Color c = smallest_available(instance.palette(v), taken);
    if (c == kUncolored) {
      throw PaletteExhausted("greedy exhausted palette of vertex " +
                             std::to_string(v));
    }
    base.assignment[v] = c;
  }
}

Coloring greedy_list_color(const ListColoringInstance& instance,
                           std::span<const Vertex> order) {
  Coloring coloring(instance.n());
  greedy_extend(instance, order, coloring);
  return coloring;
}

Coloring greedy_list_color(const ListColoringInstance& instance) {
  std::vector<Vertex> order(instance.n());
  std::iota(order.begin(), order.end(), 0);
  return greedy_list_color(instance, order);
}

std::optional<Coloring> brute_force_color(const ListColoringInstance& instance,
                                          double cap) {
  double space = 1.0;
  for (Vertex v = 0; v < instance.n(); ++v) {
    space *= static_cast<double>(instance.palette(v).size());
    if (space > cap) {
      throw CapExceeded("search space exceeds cap");
    }
  }

  const Graph& g = instance.graph();
  Coloring coloring(instance.n());
  // Depth-first over vertices in id order; prunes only assignments that are
  // already improper, so a proper coloring is found iff one exists.
  std::vector<std::size_t> choice(instance.n(), 0);
  std::size_t depth = 0;
  while (true) {
    if (depth == instance.n()) return coloring;
    const Palette& pal = instance.palette(static_cast<Vertex>(depth));
    bool advanced = false;
    while (choice[depth] < pal.size()) {
      Color c = pal[choice[depth]];
      bool ok = true;
      for (Vertex u : g.neighbors(static_cast<Vertex>(depth))) {
        if (u < depth && coloring.assignment[u] == c) {
          ok = false;
          break;
        }
      }
      ++choice[depth];
      if (ok) {
        coloring.assignment[depth] = c;
        ++depth;
        if (depth < instance.n()) choice[depth] = 0;
        advanced = true;
        break;
      }
    }
    if (!advanced) {
      if (depth == 0) return std::nullopt;
      coloring.assignment[depth] = kUncolored;
      --depth;
      coloring.assignment[depth] = kUncolored;
    }
  }
}

}  // namespace colorsim
