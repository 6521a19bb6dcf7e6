#pragma once

#include <cstdint>
#include <vector>

#include "colorsim/instance.hpp"
#include "colorsim/kwise_hash.hpp"

#include <json.hpp>

namespace colorsim {

/// Multiplicative slack applied by the property verifier. The lemma's
/// O(.)-bounds become `measured <= slack * bound`; its lower bounds on
/// available colors become `slack * measured >= bound`.
struct PropertySlack {
  double i = 4.0;
  double ii = 4.0;
  double iii = 4.0;
  double iv = 4.0;
};

struct PartitionParams {
  double gamma = 2.0;
  double lambda = 0.75;  // 1/2 + 2/(3*gamma+2)
  double q = 0.0;        // leftover probability
  std::uint32_t k = 0;   // part count, floor(sqrt(delta))
  double p = 1.0;        // 1/max(k,1)
  std::uint64_t original_n = 0;
  double c_min = 1.0;    // degree precondition: delta >= c_min * log10(n)^gamma
  PropertySlack slack;
};

/// k = floor(sqrt(delta)); lambda from gamma; q = min(1, cq*sqrt(ln n)/delta^(1/4)),
/// additionally clamped by q_cap (pipelines pass q_cap < 1 to keep the
/// recursion shrinking at small scales).
PartitionParams derive_params(std::uint64_t delta, std::uint64_t original_n,
                              double gamma, double cq = 3.0,
                              double q_cap = 1.0);

struct PartitionOutcome {
  std::uint32_t parts = 1;               // effective k (>= 1)
  std::vector<std::uint32_t> vertex_part;  // 0..parts-1 = B_i, parts = L
  KWiseSeed color_seed;
  std::vector<Color> color_universe;       // sorted
  std::vector<std::uint32_t> color_part;   // parallel to color_universe

  std::vector<std::vector<Vertex>> b_vertices;  // per part
  std::vector<Vertex> l_vertices;

  std::vector<std::uint32_t> induced_degree;  // deg within own part / L
  std::vector<std::uint32_t> delta_part;      // max induced degree per B_i
  std::uint32_t delta_l = 0;
  std::vector<std::uint64_t> edges_within;    // per B_i

  /// g_i(v) for v in B_i, g_L(v) for v in L.
  std::vector<std::uint64_t> available;

  std::uint32_t l_index() const { return parts; }
  bool in_l(Vertex v) const { return vertex_part[v] == parts; }
  std::uint32_t part_of_color(Color c) const;
};

/// Random vertex/color split of the instance. Deterministic given seed.
/// Throws DegreeTooLow when delta > 0 and below the configured threshold,
/// or when |V| <= delta.
PartitionOutcome partition_instance(const ListColoringInstance& instance,
                                    const PartitionParams& params,
                                    std::uint64_t seed);

struct PropertyEntry {
  std::string name;
  int part = -1;  // -1 = leftover / global
  double measured = 0.0;
  double bound = 0.0;
  bool pass = true;
};

struct PropertyReport {
  std::vector<PropertyEntry> entries;

  bool all_pass() const;
  bool property_pass(const std::string& prefix) const;
  nlohmann::ordered_json to_json() const;
};

/// Checks the four partition properties against slack-parameterized bounds.
PropertyReport verify_partition_properties(const ListColoringInstance& instance,
                                           const PartitionOutcome& outcome,
                                           const PartitionParams& params);

}  // namespace colorsim
