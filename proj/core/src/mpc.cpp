#include "colorsim/mpc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "colorsim/errors.hpp"
#include "colorsim/greedy.hpp"
#include "colorsim/partition.hpp"
#include "colorsim/rng.hpp"

namespace colorsim {

MpcCluster::MpcCluster(std::uint64_t machine_memory, std::size_t machine_count)
    : machine_memory_(machine_memory),
      resident_(machine_count, 0),
      peak_(machine_count, 0) {}

void MpcCluster::add_resident(std::size_t machine, std::uint64_t words) {
  resident_[machine] += words;
  if (resident_[machine] > machine_memory_) {
    throw MemoryExceeded(machine, rounds_, resident_[machine],
                         machine_memory_);
  }
  peak_[machine] = std::max(peak_[machine], resident_[machine]);
}

void MpcCluster::release_resident(std::size_t machine, std::uint64_t words) {
  resident_[machine] -= std::min(resident_[machine], words);
}

void MpcCluster::exchange_round(const std::vector<std::uint64_t>& sent,
                                const std::vector<std::uint64_t>& received) {
  ++rounds_;
  for (std::size_t m = 0; m < resident_.size(); ++m) {
    if (sent[m] > machine_memory_) {
      throw MemoryExceeded(m, rounds_, sent[m], machine_memory_);
    }
    if (received[m] > machine_memory_) {
      throw MemoryExceeded(m, rounds_, received[m], machine_memory_);
    }
  }
}

void MpcCluster::ship_to(std::size_t machine, std::uint64_t words) {
  std::uint64_t rounds_needed =
      words == 0 ? 0 : (words + machine_memory_ - 1) / machine_memory_;
  rounds_ += rounds_needed;
  add_resident(machine, words);
}

ShardMap shard_graph(const ListColoringInstance& instance, MpcCluster& cluster,
                     std::uint64_t hash_seed) {
  const Graph& g = instance.graph();
  std::uint64_t total = 0;
  for (Vertex v = 0; v < g.n(); ++v) total += 1 + instance.palette(v).size();
  total += 2 * g.edge_count();
  if (total > cluster.machine_memory() * cluster.machine_count()) {
    throw MemoryExceeded(0, 0, total,
                         cluster.machine_memory() * cluster.machine_count());
  }

  ShardMap map;
  map.vertex_machine.resize(g.n());
  map.resident_words.assign(cluster.machine_count(), 0);
  for (Vertex v = 0; v < g.n(); ++v) {
    std::size_t m = static_cast<std::size_t>(
        word_below(mix_keys(hash_seed, v, 0x7368617264ULL),
                   cluster.machine_count()));
    map.vertex_machine[v] = m;
    map.resident_words[m] += 1 + instance.palette(v).size();
  }
  for (Vertex v = 0; v < g.n(); ++v) {
    for (Vertex u : g.neighbors(v)) {
      if (u > v) {
        std::size_t m = static_cast<std::size_t>(word_below(
            mix_keys(hash_seed, (static_cast<std::uint64_t>(v) << 32) | u,
                     0x65646765ULL),
            cluster.machine_count()));
        map.resident_words[m] += 2;
      }
    }
  }
  for (std::size_t m = 0; m < cluster.machine_count(); ++m) {
    cluster.add_resident(m, map.resident_words[m]);
  }
  return map;
}

namespace {

struct MpcRun {
  const ListColoringInstance& instance;
  const MpcConfig& config;
  std::uint64_t seed;
  MpcCluster& cluster;

  Coloring coloring;
  // One palette state for the whole run: each vertex follows exactly one
  // root-to-leaf path, so its entry can be narrowed in place.
  std::vector<Palette> current;
  MpcTrace trace;
  std::uint64_t node_counter = 0;

  MpcRun(const ListColoringInstance& inst, const MpcConfig& cfg,
         std::uint64_t sd, MpcCluster& cl)
      : instance(inst), config(cfg), seed(sd), cluster(cl),
        coloring(inst.n()), current(inst.palettes()) {}

  std::uint64_t base_threshold() const {
    return static_cast<std::uint64_t>(
        config.c_base * std::pow(static_cast<double>(instance.n()),
                                 config.alpha));
  }

  void prune_to_residual(const std::vector<Vertex>& vertices) {
    for (Vertex v : vertices) {
      current[v] = Palette{
          residual_palette(instance.graph(), current, coloring, v)};
    }
  }

  // Greedy on a designated machine over the shipped subgraph. Palettes are
  // truncated to the deg+1 smallest colors, which leaves the greedy outcome
  // unchanged.
  void base_case(const Graph& sub, const std::vector<Vertex>& ids) {
    if (ids.empty()) return;
    std::uint64_t ship_words = 0;
    std::vector<Palette> sub_pal(sub.n());
    for (Vertex s = 0; s < sub.n(); ++s) {
      std::vector<Color> res = current[ids[s]].colors;
      std::uint64_t keep =
          std::min<std::uint64_t>(res.size(), sub.degree(s) + 1);
      res.resize(keep);
      ship_words += 2 + keep + 2ULL * sub.degree(s);
      sub_pal[s] = Palette{std::move(res)};
    }
    std::size_t leader = node_counter++ % cluster.machine_count();
    cluster.ship_to(leader, ship_words);

    ListColoringInstance sub_inst(sub, std::move(sub_pal), 0);
    Coloring local = greedy_list_color(sub_inst);
    for (Vertex s = 0; s < sub.n(); ++s) {
      coloring.assignment[ids[s]] = local.assignment[s];
    }
    cluster.release_resident(leader, ship_words);
    // Answers scattered back, one word per vertex.
    cluster.charge_rounds(
        (sub.n() + cluster.machine_memory() - 1) / cluster.machine_memory());
  }

  void process(std::vector<Vertex> vertices, const std::string& branch,
               std::uint32_t depth, std::uint64_t parent_delta) {
    prune_to_residual(vertices);
    auto [sub, ids] = instance.graph().induced(vertices);
    const std::uint64_t delta = sub.max_degree();
    trace.tree.push_back({delta, vertices.size(), branch});
    trace.depth = std::max(trace.depth, depth);

    // A child that failed to shrink is finished on a leader; this keeps the
    // recursion strictly decreasing in delta.
    if (vertices.empty() || delta * delta <= base_threshold() ||
        delta >= parent_delta) {
      base_case(sub, ids);
      return;
    }

    std::vector<Palette> sub_pal(sub.n());
    for (Vertex s = 0; s < sub.n(); ++s) sub_pal[s] = current[ids[s]];
    ListColoringInstance sub_inst(std::move(sub), std::move(sub_pal), 0);

    PartitionParams params = derive_params(delta, instance.n(), config.gamma,
                                           config.cq, config.q_cap);
    params.c_min = 0.0;  // the gamma=6 polylog threshold is out of reach here
    PartitionOutcome outcome = partition_instance(
        sub_inst, params, mix_keys(seed, 0x6d7063, node_counter++));
    cluster.charge_rounds(1);  // shared color-seed broadcast

    std::vector<Vertex> leftover;
    for (Vertex s : outcome.l_vertices) leftover.push_back(ids[s]);

    // B_1..B_k first: their color classes are disjoint, so the subtrees
    // cannot conflict. Vertices whose class intersection is too small for
    // the counting guarantee are deferred to the leftover child.
    for (std::uint32_t i = 0; i < outcome.parts; ++i) {
      std::vector<Vertex> child;
      child.reserve(outcome.b_vertices[i].size());
      for (Vertex s : outcome.b_vertices[i]) {
        if (outcome.available[s] <
            static_cast<std::uint64_t>(outcome.induced_degree[s]) + 1) {
          leftover.push_back(ids[s]);
          continue;
        }
        child.push_back(ids[s]);
        std::vector<Color> mine;
        for (Color c : sub_inst.palette(s).colors) {
          if (outcome.part_of_color(c) == i) mine.push_back(c);
        }
        current[ids[s]] = Palette{std::move(mine)};
      }
      process(std::move(child), "B", depth + 1, delta);
    }

    cluster.charge_rounds(1);  // color announcements toward the leftover
    std::sort(leftover.begin(), leftover.end());
    process(std::move(leftover), "L", depth + 1, delta);
  }
};

}  // namespace

MpcRunResult run_mpc_coloring(const ListColoringInstance& instance,
                              const MpcConfig& config, std::uint64_t seed) {
  if (config.alpha <= 0.0 || config.alpha >= 1.0) {
    throw ConfigError("mpc: alpha must lie in (0,1)");
  }
  const std::uint64_t delta = instance.delta();
  for (Vertex v = 0; v < instance.n(); ++v) {
    double need = std::max(
        static_cast<double>(instance.graph().degree(v)) + 1.0,
        static_cast<double>(delta) -
            std::pow(static_cast<double>(delta), 3.0 / 5.0));
    if (static_cast<double>(instance.palette(v).size()) < need) {
      throw ConfigError("mpc: palette of vertex " + std::to_string(v) +
                        " below the required floor");
    }
  }

  std::uint64_t s_words = static_cast<std::uint64_t>(
      std::ceil(std::pow(static_cast<double>(std::max<Vertex>(instance.n(), 1)),
                         config.alpha)) *
      config.c_mem);
  std::uint64_t total = 2 * instance.graph().edge_count() + instance.n();
  for (Vertex v = 0; v < instance.n(); ++v) total += instance.palette(v).size();
  std::size_t machines = static_cast<std::size_t>(std::max<std::uint64_t>(
      1, (static_cast<std::uint64_t>(config.c_total * total) + s_words - 1) /
             std::max<std::uint64_t>(s_words, 1)));

  MpcCluster cluster(s_words, machines);
  shard_graph(instance, cluster, mix_keys(seed, 0x736864));

  MpcRun run(instance, config, seed, cluster);
  std::vector<Vertex> root(instance.n());
  std::iota(root.begin(), root.end(), 0);
  run.process(std::move(root), "root", 0, UINT64_MAX);

  run.trace.alpha = config.alpha;
  run.trace.rounds = cluster.rounds();
  run.trace.peak_memory = cluster.peak_resident();
  return {std::move(run.coloring), std::move(run.trace)};
}

}  // namespace colorsim
