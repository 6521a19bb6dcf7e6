#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace colorsim {

struct CliqueLevel {
  std::uint64_t delta = 0;
  std::uint64_t vertices = 0;
  std::uint64_t words = 0;
};

struct CliqueTrace {
  std::uint64_t rounds = 0;
  std::uint32_t depth = 0;
  std::vector<CliqueLevel> per_level;
  std::vector<std::uint32_t> unresolved;
  std::string path;  // "highdeg" | "smalldeg" | "greedy-fallback"
  std::uint64_t deferred = 0;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["model"] = "clique";
    j["rounds"] = rounds;
    j["depth"] = depth;
    auto levels = nlohmann::ordered_json::array();
    for (const auto& l : per_level) {
      levels.push_back({{"delta", l.delta},
                        {"vertices", l.vertices},
                        {"words", l.words}});
    }
    j["perLevel"] = levels;
    j["unresolved"] = unresolved;
    j["path"] = path;
    j["deferred"] = deferred;
    return j;
  }
};

struct MpcTreeNode {
  std::uint64_t delta = 0;
  std::uint64_t vertices = 0;
  std::string branch;  // "root" | "B" | "L" | "base"
};

struct MpcTrace {
  double alpha = 0.0;
  std::uint32_t depth = 0;
  std::vector<MpcTreeNode> tree;
  std::vector<std::uint64_t> peak_memory;
  std::uint64_t rounds = 0;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["model"] = "mpc";
    j["alpha"] = alpha;
    j["depth"] = depth;
    auto nodes = nlohmann::ordered_json::array();
    for (const auto& t : tree) {
      nodes.push_back({{"delta", t.delta},
                       {"vertices", t.vertices},
                       {"branch", t.branch}});
    }
    j["tree"] = nodes;
    j["peakMemory"] = peak_memory;
    j["rounds"] = rounds;
    return j;
  }
};

struct BiddingIterStats {
  std::uint32_t i = 0;
  std::int64_t c = 0;
  std::uint64_t active = 0;     // at iteration start
  std::uint64_t colored = 0;    // cumulative at iteration end
  std::uint64_t bad = 0;        // cumulative at iteration end
  std::uint64_t overloaded = 0;
  std::uint64_t lazy = 0;
  std::uint64_t not_rich = 0;
  std::uint64_t max_nstar = 0;

  nlohmann::ordered_json to_json() const {
    return {{"i", i},           {"C_i", c},
            {"active", active}, {"colored", colored},
            {"bad", bad},       {"overloaded", overloaded},
            {"lazy", lazy},     {"notRich", not_rich},
            {"maxNstar", max_nstar}};
  }
};

}  // namespace colorsim
