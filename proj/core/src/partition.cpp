#include "colorsim/partition.hpp"

#include <algorithm>
#include <cmath>

#include "colorsim/errors.hpp"
#include "colorsim/rng.hpp"

namespace colorsim {

PartitionParams derive_params(std::uint64_t delta, std::uint64_t original_n,
                              double gamma, double cq, double q_cap) {
  PartitionParams params;
  params.gamma = gamma;
  params.lambda = 0.5 + 2.0 / (3.0 * gamma + 2.0);
  params.k = static_cast<std::uint32_t>(
      std::floor(std::sqrt(static_cast<double>(delta))));
  params.p = 1.0 / std::max<std::uint32_t>(params.k, 1);
  params.original_n = original_n;
  if (delta == 0) {
    params.q = 0.0;
  } else {
    double q = cq * std::sqrt(std::log(static_cast<double>(
                   std::max<std::uint64_t>(original_n, 2)))) /
               std::pow(static_cast<double>(delta), 0.25);
    params.q = std::min(1.0, q);
  }
  params.q = std::min(params.q, q_cap);
  return params;
}

std::uint32_t PartitionOutcome::part_of_color(Color c) const {
  auto it = std::lower_bound(color_universe.begin(), color_universe.end(), c);
  if (it == color_universe.end() || *it != c) {
    throw InvariantBreach("color not in universe");
  }
  return color_part[it - color_universe.begin()];
}

PartitionOutcome partition_instance(const ListColoringInstance& instance,
                                    const PartitionParams& params,
                                    std::uint64_t seed) {
  const Graph& g = instance.graph();
  const std::uint64_t delta = g.max_degree();
  if (delta > 0 && params.c_min > 0.0) {
    double threshold =
        params.c_min *
        std::pow(std::log10(static_cast<double>(
                     std::max<std::uint64_t>(params.original_n, 10))),
                 params.gamma);
    if (static_cast<double>(delta) < threshold) {
      throw DegreeTooLow(delta, threshold);
    }
    if (g.n() <= delta) {
      throw DegreeTooLow(delta, static_cast<double>(g.n()));
    }
  }

  PartitionOutcome out;
  out.parts = std::max<std::uint32_t>(params.k, 1);
  out.vertex_part.resize(g.n());

  for (Vertex v = 0; v < g.n(); ++v) {
    SplitMix64 rng(mix_keys(seed, v, 0x7061727431ULL));
    if (rng.next_unit() < params.q) {
      out.vertex_part[v] = out.parts;
    } else {
      out.vertex_part[v] = static_cast<std::uint32_t>(rng.next_below(out.parts));
    }
  }

  out.color_universe = instance.color_universe();
  std::uint64_t max_color =
      out.color_universe.empty() ? 0 : out.color_universe.back();
  std::uint64_t modulus = next_prime_u64(
      std::max<std::uint64_t>({(1ULL << 16) * out.parts, max_color + 1, 257}));
  std::uint32_t independence = static_cast<std::uint32_t>(std::max(
      2.0, std::ceil(2.0 * std::log2(static_cast<double>(
               std::max<std::uint64_t>(params.original_n, 2))))));
  SplitMix64 seed_rng(mix_keys(seed, 0x7061727432ULL));
  out.color_seed = sample_seed(independence, modulus, seed_rng);
  out.color_part.resize(out.color_universe.size());
  for (std::size_t i = 0; i < out.color_universe.size(); ++i) {
    out.color_part[i] =
        static_cast<std::uint32_t>(kwise_eval(out.color_seed,
                                              out.color_universe[i],
                                              out.parts));
  }

  out.b_vertices.resize(out.parts);
  for (Vertex v = 0; v < g.n(); ++v) {
    if (out.in_l(v)) {
      out.l_vertices.push_back(v);
    } else {
      out.b_vertices[out.vertex_part[v]].push_back(v);
    }
  }

  out.induced_degree.assign(g.n(), 0);
  out.delta_part.assign(out.parts, 0);
  out.edges_within.assign(out.parts, 0);
  for (Vertex v = 0; v < g.n(); ++v) {
    std::uint32_t mine = out.vertex_part[v];
    std::uint32_t d = 0;
    for (Vertex u : g.neighbors(v)) {
      if (out.vertex_part[u] == mine) {
        ++d;
        if (u > v && mine < out.parts) ++out.edges_within[mine];
      }
    }
    out.induced_degree[v] = d;
    if (mine < out.parts) {
      out.delta_part[mine] = std::max(out.delta_part[mine], d);
    } else {
      out.delta_l = std::max(out.delta_l, d);
    }
  }

  out.available.assign(g.n(), 0);
  for (Vertex v = 0; v < g.n(); ++v) {
    if (out.in_l(v)) {
      // g_L(v) = |palette| - (deg(v) - deg_L(v))
      out.available[v] = instance.palette(v).size() -
                         (g.degree(v) - out.induced_degree[v]);
    } else {
      std::uint64_t count = 0;
      for (Color c : instance.palette(v).colors) {
        if (out.part_of_color(c) == out.vertex_part[v]) ++count;
      }
      out.available[v] = count;
    }
  }
  return out;
}

bool PropertyReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const PropertyEntry& e) { return e.pass; });
}

bool PropertyReport::property_pass(const std::string& prefix) const {
  for (const auto& e : entries) {
    if (e.name.rfind(prefix, 0) == 0 && !e.pass) return false;
  }
  return true;
}

nlohmann::ordered_json PropertyReport::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    arr.push_back({{"name", e.name},
                   {"part", e.part},
                   {"measured", e.measured},
                   {"bound", e.bound},
                   {"pass", e.pass}});
  }
  return arr;
}

PropertyReport verify_partition_properties(const ListColoringInstance& instance,
                                           const PartitionOutcome& outcome,
                                           const PartitionParams& params) {
  const Graph& g = instance.graph();
  const double n = static_cast<double>(g.n());
  const double delta = static_cast<double>(g.max_degree());
  const double log_n =
      std::log(std::max(2.0, static_cast<double>(params.original_n)));
  const PropertySlack& slack = params.slack;
  PropertyReport report;

  // i) |E(G[B_i])| = O(|V|) per part, |L| = O(q |V|).
  for (std::uint32_t i = 0; i < outcome.parts; ++i) {
    PropertyEntry e;
    e.name = "i-edges";
    e.part = static_cast<int>(i);
    e.measured = static_cast<double>(outcome.edges_within[i]);
    e.bound = slack.i * n;
    e.pass = e.measured <= e.bound;
    report.entries.push_back(e);
  }
  {
    PropertyEntry e;
    e.name = "i-leftover";
    e.measured = static_cast<double>(outcome.l_vertices.size());
    e.bound = slack.i * params.q * n;
    e.pass = e.measured <= e.bound;
    report.entries.push_back(e);
  }

  // ii) slack * g_i(v) >= max(deg_Bi(v), Delta_i - Delta_i^lambda) + 1.
  for (std::uint32_t i = 0; i < outcome.parts; ++i) {
    PropertyEntry e;
    e.name = "ii-available";
    e.part = static_cast<int>(i);
    e.pass = true;
    double worst = -1.0;
    double di = static_cast<double>(outcome.delta_part[i]);
    double tail = std::max(0.0, di - std::pow(di, params.lambda));
    for (Vertex v : outcome.b_vertices[i]) {
      double bound =
          std::max(static_cast<double>(outcome.induced_degree[v]), tail) + 1.0;
      double measured = slack.ii * static_cast<double>(outcome.available[v]);
      double margin = measured - bound;
      if (worst < 0.0 || margin < worst) {
        worst = margin;
        e.measured = measured;
        e.bound = bound;
      }
    }
    if (worst >= 0.0) e.pass = e.measured >= e.bound;
    report.entries.push_back(e);
  }

  // iii) slack * g_L(v) >= max(deg_L(v), Delta_L - Delta_L^lambda) + 1.
  {
    PropertyEntry e;
    e.name = "iii-leftover-available";
    e.pass = true;
    double dl = static_cast<double>(outcome.delta_l);
    double tail = std::max(0.0, dl - std::pow(dl, params.lambda));
    double worst = -1.0;
    for (Vertex v : outcome.l_vertices) {
      double bound =
          std::max(static_cast<double>(outcome.induced_degree[v]), tail) + 1.0;
      double measured = slack.iii * static_cast<double>(outcome.available[v]);
      double margin = measured - bound;
      if (worst < 0.0 || margin < worst) {
        worst = margin;
        e.measured = measured;
        e.bound = bound;
      }
    }
    if (worst >= 0.0) e.pass = e.measured >= e.bound;
    report.entries.push_back(e);
  }

  // iv) Degree bounds: part-level and per-vertex.
  for (std::uint32_t i = 0; i < outcome.parts; ++i) {
    PropertyEntry e;
    e.name = "iv-part-degree";
    e.part = static_cast<int>(i);
    e.measured = static_cast<double>(outcome.delta_part[i]);
    e.bound = slack.iv * std::sqrt(delta);
    e.pass = e.measured <= e.bound;
    report.entries.push_back(e);
  }
  {
    PropertyEntry e;
    e.name = "iv-leftover-degree";
    e.measured = static_cast<double>(outcome.delta_l);
    e.bound = slack.iv * params.q * delta;
    e.pass = e.measured <= e.bound;
    report.entries.push_back(e);
  }
  {
    // Per-vertex: deg_Bi(v) <= max(slack*log n, slack*deg(v)/sqrt(delta)),
    // deg_L(v) <= max(slack*log n, slack*q*deg(v)) for every vertex.
    PropertyEntry eb, el;
    eb.name = "iv-vertex-b";
    el.name = "iv-vertex-l";
    eb.pass = el.pass = true;
    double worst_b = -1.0, worst_l = -1.0;
    std::vector<std::uint32_t> per_part(outcome.parts, 0);
    for (Vertex v = 0; v < g.n(); ++v) {
      std::fill(per_part.begin(), per_part.end(), 0);
      std::uint32_t deg_l = 0;
      for (Vertex u : g.neighbors(v)) {
        if (outcome.in_l(u)) {
          ++deg_l;
        } else {
          ++per_part[outcome.vertex_part[u]];
        }
      }
      std::uint32_t max_b =
          outcome.parts == 0
              ? 0
              : *std::max_element(per_part.begin(), per_part.end());
      double deg_v = static_cast<double>(g.degree(v));
      double bound_b =
          std::max(slack.iv * log_n,
                   delta > 0 ? slack.iv * deg_v / std::sqrt(delta) : 0.0);
      double bound_l = std::max(slack.iv * log_n, slack.iv * params.q * deg_v);
      double margin_b = bound_b - static_cast<double>(max_b);
      double margin_l = bound_l - static_cast<double>(deg_l);
      if (worst_b < 0.0 || margin_b < worst_b) {
        worst_b = margin_b;
        eb.measured = static_cast<double>(max_b);
        eb.bound = bound_b;
      }
      if (worst_l < 0.0 || margin_l < worst_l) {
        worst_l = margin_l;
        el.measured = static_cast<double>(deg_l);
        el.bound = bound_l;
      }
    }
    eb.pass = eb.measured <= eb.bound;
    el.pass = el.measured <= el.bound;
    report.entries.push_back(eb);
    report.entries.push_back(el);
  }
  return report;
}

}  // namespace colorsim
