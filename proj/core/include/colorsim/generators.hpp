#pragma once

#include <cstdint>
#include <string>

#include "colorsim/instance.hpp"

namespace colorsim {

/// Erdos-Renyi G(n, p). Deterministic given (n, p, seed).
Graph generate_gnp(Vertex n, double p, std::uint64_t seed);

/// Random d-regular graph via the pairing model with rejection. Requires
/// n*d even and d < n.
Graph generate_random_regular(Vertex n, std::uint32_t d, std::uint64_t seed);

/// Edge-list file: one "u v" pair of 0-based decimal ids per line, '#'
/// comments ignored. Vertex count is max id + 1.
Graph load_edge_list(const std::string& path);

/// Palette file: one line "v: c1 c2 ..." per vertex; absent vertices default
/// to {0..delta}.
std::vector<Palette> load_palettes(const std::string& path, const Graph& g);

/// (delta+1)-list instance with identical palettes {0..delta}.
ListColoringInstance uniform_instance(Graph g);

/// Instance with per-vertex palettes of size `palette_size` sampled from
/// {0..universe-1}. Used to build palette-rich instances.
ListColoringInstance sampled_palette_instance(Graph g,
                                              std::uint64_t palette_size,
                                              std::uint64_t universe,
                                              std::uint64_t seed);

}  // namespace colorsim
