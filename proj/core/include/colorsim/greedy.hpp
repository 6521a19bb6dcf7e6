#pragma once

#include <optional>
#include <span>

#include "colorsim/instance.hpp"

namespace colorsim {

/// Colors vertices in the given order, always taking the smallest palette
/// color unused by already-colored neighbors. Succeeds whenever
/// |palette(v)| >= deg(v) + 1 for every vertex; a vertex exhausting its
/// palette throws PaletteExhausted (an invariant breach upstream).
Coloring greedy_list_color(const ListColoringInstance& instance,
                           std::span<const Vertex> order);

/// Ascending-id order.
Coloring greedy_list_color(const ListColoringInstance& instance);

/// Extends `base` greedily over `order`, skipping already-assigned vertices.
void greedy_extend(const ListColoringInstance& instance,
                   std::span<const Vertex> order, Coloring& base);

/// Exhaustive search. Returns a proper palette-respecting coloring iff one
/// exists, std::nullopt when unsatisfiable. Throws CapExceeded when the
/// product of palette sizes exceeds `cap`.
std::optional<Coloring> brute_force_color(const ListColoringInstance& instance,
                                          double cap = 1e6);

}  // namespace colorsim
