#include "colorsim/generators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "colorsim/errors.hpp"
#include "colorsim/rng.hpp"

namespace colorsim {

Graph generate_gnp(Vertex n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw ConfigError("gnp: p out of [0,1]");
  std::vector<std::pair<Vertex, Vertex>> edges;
  if (n >= 2 && p > 0.0) {
    SplitMix64 rng(mix_keys(seed, 0x676e70));
    if (p >= 1.0) {
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    } else {
      // Geometric skipping over the lexicographic pair sequence.
      const double log1mp = std::log1p(-p);
      std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
      std::uint64_t idx = 0;
      while (idx < total) {
        double u01 = rng.next_unit();
        double skip_f = std::floor(std::log1p(-u01) / log1mp);
        std::uint64_t remaining = total - idx;
        if (skip_f >= static_cast<double>(remaining)) break;
        std::uint64_t skip = static_cast<std::uint64_t>(skip_f);
        if (skip >= remaining) break;
        idx += skip;
        // Unrank pair index -> (u, v).
        Vertex u = 0;
        std::uint64_t row = static_cast<std::uint64_t>(n) - 1;
        std::uint64_t rem = idx;
        while (rem >= row) {
          rem -= row;
          --row;
          ++u;
        }
        Vertex v = static_cast<Vertex>(u + 1 + rem);
        edges.emplace_back(u, v);
        ++idx;
      }
    }
  }
  return Graph::from_edges(n, edges);
}

Graph generate_random_regular(Vertex n, std::uint32_t d, std::uint64_t seed) {
  if (d >= n || (static_cast<std::uint64_t>(n) * d) % 2 != 0) {
    throw InfeasibleSpec("random_regular: need d < n and n*d even");
  }
  if (d == 0) return Graph::from_edges(n, {});
  SplitMix64 rng(mix_keys(seed, 0x726567));
  const int kMaxAttempts = 2000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<Vertex> points(static_cast<std::size_t>(n) * d);
    for (std::size_t i = 0; i < points.size(); ++i) {
      points[i] = static_cast<Vertex>(i / d);
    }
    for (std::size_t i = points.size(); i > 1; --i) {
      std::size_t j = rng.next_below(i);
      std::swap(points[i - 1], points[j]);
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(points.size() / 2);
    bool ok = true;
    std::vector<std::pair<Vertex, Vertex>> seen;
    for (std::size_t i = 0; i + 1 < points.size() && ok; i += 2) {
      Vertex a = points[i], b = points[i + 1];
      if (a == b) ok = false;
      if (a > b) std::swap(a, b);
      edges.emplace_back(a, b);
    }
    if (!ok) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
      continue;  // multi-edge, resample
    }
    return Graph::from_edges(n, edges);
  }
  throw InfeasibleSpec("random_regular: rejection budget exhausted");
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list: " + path);
  std::vector<std::pair<Vertex, Vertex>> edges;
  Vertex max_id = 0;
  bool any = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u)) continue;  // blank line
    if (!(ls >> v)) {
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": expected two vertex ids");
    }
    long long extra;
    if (ls >> extra) {
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": trailing tokens");
    }
    if (u < 0 || v < 0) {
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": negative vertex id");
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    max_id = std::max({max_id, static_cast<Vertex>(u), static_cast<Vertex>(v)});
    any = true;
  }
  return Graph::from_edges(any ? max_id + 1 : 0, edges);
}

std::vector<Palette> load_palettes(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open palette file: " + path);
  std::vector<Color> def(g.max_degree() + 1);
  std::iota(def.begin(), def.end(), Color{0});
  std::vector<Palette> palettes(g.n(), Palette{def});
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto colon = line.find(':');
    if (colon == std::string::npos) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected 'v: c1 c2 ...'");
    }
    long long v = std::stoll(line.substr(0, colon));
    if (v < 0 || static_cast<Vertex>(v) >= g.n()) {
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": vertex id out of range");
    }
    std::istringstream ls(line.substr(colon + 1));
    std::vector<Color> cs;
    long long c;
    while (ls >> c) {
      if (c < 0) {
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": negative color");
      }
      cs.push_back(static_cast<Color>(c));
    }
    palettes[static_cast<Vertex>(v)] = Palette::from_unsorted(std::move(cs));
  }
  return palettes;
}

ListColoringInstance uniform_instance(Graph g) {
  std::vector<Color> def(g.max_degree() + 1);
  std::iota(def.begin(), def.end(), Color{0});
  std::vector<Palette> palettes(g.n(), Palette{def});
  std::uint64_t floor = g.max_degree();
  return ListColoringInstance(std::move(g), std::move(palettes), floor);
}

ListColoringInstance sampled_palette_instance(Graph g,
                                              std::uint64_t palette_size,
                                              std::uint64_t universe,
                                              std::uint64_t seed) {
  if (universe < palette_size) throw ConfigError("universe < palette size");
  if (palette_size < static_cast<std::uint64_t>(g.max_degree()) + 1) {
    throw ConfigError("palette size below max degree + 1");
  }
  std::vector<Palette> palettes(g.n());
  for (Vertex v = 0; v < g.n(); ++v) {
    SplitMix64 rng(mix_keys(seed, v, 0x70616c));
    // Floyd's sampling of palette_size distinct colors from [0, universe).
    std::vector<Color> chosen;
    chosen.reserve(palette_size);
    for (std::uint64_t j = universe - palette_size; j < universe; ++j) {
      Color t = rng.next_below(j + 1);
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
        chosen.push_back(t);
      } else {
        chosen.push_back(j);
      }
    }
    palettes[v] = Palette::from_unsorted(std::move(chosen));
  }
  std::uint64_t floor = palette_size > 0 ? palette_size - 1 : 0;
  return ListColoringInstance(std::move(g), std::move(palettes), floor);
}

}  // namespace colorsim
