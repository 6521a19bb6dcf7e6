#pragma once

#include <cstdint>
#include <vector>

#include "colorsim/instance.hpp"
#include "colorsim/trace.hpp"

namespace colorsim {

struct MpcConfig {
  double alpha = 0.5;
  double c_mem = 256.0;     // machine memory S = ceil(n^alpha) * c_mem words
  double c_total = 3.0;     // machine count headroom over total words / S
  double c_base = 1.0;      // base case: delta^2 <= c_base * n^alpha
  double gamma = 6.0;
  double cq = 3.0;
  double q_cap = 0.4;
  bool base_case_first = true;  // check the base case before partitioning
};

/// Lockstep machines with S words of memory each; per-round sent/received
/// and resident words are capped at S.
class MpcCluster {
public:
  MpcCluster(std::uint64_t machine_memory, std::size_t machine_count);

  std::uint64_t machine_memory() const { return machine_memory_; }
  std::size_t machine_count() const { return resident_.size(); }
  std::uint64_t rounds() const { return rounds_; }
  const std::vector<std::uint64_t>& peak_resident() const { return peak_; }

  void add_resident(std::size_t machine, std::uint64_t words);
  void release_resident(std::size_t machine, std::uint64_t words);

  /// One communication round; per-machine sent and received each capped at S.
  void exchange_round(const std::vector<std::uint64_t>& sent,
                      const std::vector<std::uint64_t>& received);

  /// Ships `words` to `machine` over as many rounds as the cap requires and
  /// makes them resident there.
  void ship_to(std::size_t machine, std::uint64_t words);

  void charge_rounds(std::uint64_t r) { rounds_ += r; }

private:
  std::uint64_t machine_memory_;
  std::vector<std::uint64_t> resident_;
  std::vector<std::uint64_t> peak_;
  std::uint64_t rounds_ = 0;
};

struct ShardMap {
  std::vector<std::size_t> vertex_machine;
  std::vector<std::uint64_t> resident_words;  // per machine after sharding
};

/// Hash-shards vertices (with palettes) and edges across the cluster.
/// Throws MemoryExceeded when a shard overflows a machine.
ShardMap shard_graph(const ListColoringInstance& instance, MpcCluster& cluster,
                     std::uint64_t hash_seed);

struct MpcRunResult {
  Coloring coloring;
  MpcTrace trace;
};

/// Recursive partition pipeline over the cluster: recurses on every part and
/// the leftover, ships base-case subgraphs to a designated machine for
/// greedy coloring.
MpcRunResult run_mpc_coloring(const ListColoringInstance& instance,
                              const MpcConfig& config, std::uint64_t seed);

}  // namespace colorsim
