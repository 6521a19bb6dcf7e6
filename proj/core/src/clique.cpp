#include "colorsim/clique.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "colorsim/bidding.hpp"
#include "colorsim/errors.hpp"
#include "colorsim/greedy.hpp"
#include "colorsim/partition.hpp"
#include "colorsim/shattering.hpp"

namespace colorsim {

CliqueNetwork::CliqueNetwork(Vertex n, double c_lenzen,
                             std::uint64_t lenzen_rounds)
    : n_(n), c_lenzen_(c_lenzen), lenzen_rounds_(lenzen_rounds) {}

std::uint64_t CliqueNetwork::per_vertex_budget() const {
  return static_cast<std::uint64_t>(c_lenzen_ * static_cast<double>(n_));
}

void CliqueNetwork::direct_round(const std::vector<std::uint64_t>& sent,
                                 const std::vector<std::uint64_t>& received) {
  std::uint64_t cap = n_ == 0 ? 0 : n_ - 1;
  std::uint64_t s = 0, r = 0;
  for (Vertex v = 0; v < n_; ++v) {
    if (sent[v] > cap) {
      throw OverloadedVertex(v, OverloadedVertex::Direction::Send, sent[v],
                             cap);
    }
    if (received[v] > cap) {
      throw OverloadedVertex(v, OverloadedVertex::Direction::Receive,
                             received[v], cap);
    }
    s += sent[v];
    r += received[v];
  }
  if (s != r) throw InvariantBreach("direct round: sent != received");
  ++rounds_;
  total_sent_ += s;
  total_received_ += r;
}

std::uint64_t CliqueNetwork::lenzen_route(
    const std::vector<RoutingRequest>& requests) {
  std::vector<std::uint64_t> sourced(n_, 0), destined(n_, 0);
  for (const auto& req : requests) {
    if (req.words == 0) throw ConfigError("routing request with zero payload");
    sourced[req.source] += req.words;
    destined[req.destination] += req.words;
  }
  const std::uint64_t budget = per_vertex_budget();
  std::uint64_t total = 0;
  for (Vertex v = 0; v < n_; ++v) {
    if (sourced[v] > budget) {
      throw OverloadedVertex(v, OverloadedVertex::Direction::Send, sourced[v],
                             budget);
    }
    if (destined[v] > budget) {
      throw OverloadedVertex(v, OverloadedVertex::Direction::Receive,
                             destined[v], budget);
    }
    total += sourced[v];
  }
  rounds_ += lenzen_rounds_;
  total_sent_ += total;
  total_received_ += total;
  return lenzen_rounds_;
}

std::uint64_t CliqueNetwork::lenzen_bulk(
    const std::vector<std::uint64_t>& sourced,
    const std::vector<std::uint64_t>& destined) {
  const std::uint64_t budget = per_vertex_budget();
  std::uint64_t s = 0, r = 0;
  for (Vertex v = 0; v < n_; ++v) {
    if (sourced[v] > budget) {
      throw OverloadedVertex(v, OverloadedVertex::Direction::Send, sourced[v],
                             budget);
    }
    if (destined[v] > budget) {
      throw OverloadedVertex(v, OverloadedVertex::Direction::Receive,
                             destined[v], budget);
    }
    s += sourced[v];
    r += destined[v];
  }
  if (s != r) throw InvariantBreach("lenzen bulk: sent != received");
  rounds_ += lenzen_rounds_;
  total_sent_ += s;
  total_received_ += r;
  return lenzen_rounds_;
}

std::uint64_t CliqueNetwork::route_batched(std::vector<RoutingRequest> requests) {
  if (requests.empty()) return 0;
  const std::uint64_t budget = per_vertex_budget();
  std::uint64_t rounds_used = 0;
  std::vector<RoutingRequest> batch;
  std::vector<std::uint64_t> sourced(n_, 0), destined(n_, 0);
  auto flush = [&]() {
    if (batch.empty()) return;
    rounds_used += lenzen_route(batch);
    batch.clear();
    std::fill(sourced.begin(), sourced.end(), 0);
    std::fill(destined.begin(), destined.end(), 0);
  };
  for (const auto& req : requests) {
    if (req.words > budget) {
      throw OverloadedVertex(req.source, OverloadedVertex::Direction::Send,
                             req.words, budget);
    }
    if (sourced[req.source] + req.words > budget ||
        destined[req.destination] + req.words > budget) {
      flush();
    }
    sourced[req.source] += req.words;
    destined[req.destination] += req.words;
    batch.push_back(req);
  }
  flush();
  return rounds_used;
}

std::vector<std::uint64_t> direct_local_execution(const SimulationTask& task) {
  const Vertex n = static_cast<Vertex>(task.receive_from.size());
  std::vector<std::uint64_t> outputs(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    // Closure over <= tau hops of receive-from edges.
    std::vector<Vertex> closure{v};
    std::vector<std::uint8_t> seen(n, 0);
    seen[v] = 1;
    std::deque<std::pair<Vertex, std::uint32_t>> queue{{v, 0}};
    while (!queue.empty()) {
      auto [u, d] = queue.front();
      queue.pop_front();
      if (d == task.tau) continue;
      for (Vertex w : task.receive_from[u]) {
        if (!seen[w]) {
          seen[w] = 1;
          closure.push_back(w);
          queue.emplace_back(w, d + 1);
        }
      }
    }
    std::sort(closure.begin(), closure.end());
    std::vector<std::pair<Vertex, std::uint64_t>> gathered;
    gathered.reserve(closure.size());
    for (Vertex w : closure) gathered.emplace_back(w, task.input[w]);
    outputs[v] = task.compute(v, gathered);
  }
  return outputs;
}

OpportunisticResult opportunistic_simulate(CliqueNetwork& network,
                                           const SimulationTask& task,
                                           std::uint64_t seed, double eps) {
  const Vertex n = network.n();
  if (task.receive_from.size() != n || task.input.size() != n) {
    throw ConfigError("simulation task size mismatch");
  }
  const std::uint64_t log_n = static_cast<std::uint64_t>(
      std::ceil(std::log2(static_cast<double>(std::max<Vertex>(n, 2)))));
  if (task.l_out_bits > 4 * 64) {
    throw ConfigError("task output exceeds the O(log n) word budget");
  }
  if (task.l_in_bits > 64ULL * n) {
    throw ConfigError("task input exceeds the O(n) budget");
  }

  OpportunisticResult result;
  result.p_used = task.p;
  if (result.p_used <= 0.0) {
    result.p_used =
        eps / (static_cast<double>(task.delta_star) +
               static_cast<double>(task.l_in_bits) / static_cast<double>(log_n));
  }
  result.p_used = std::min(1.0, std::max(result.p_used, 0.0));
  if (result.p_used <= 0.0) throw ConfigError("sampling probability is zero");

  const std::uint64_t payload_words =
      (task.delta_star * log_n + task.l_in_bits + 63) / 64;
  const std::uint64_t out_words = (task.l_out_bits + 63) / 64;

  // Phase 1: every ordered pair ships independently with probability p.
  const bool full = result.p_used >= 1.0;
  const std::size_t words_per_row = (n + 63) / 64;
  std::vector<std::uint64_t> holds;
  std::vector<std::vector<Vertex>> receivers_of(full ? 0 : n);
  if (!full) holds.assign(static_cast<std::size_t>(n) * words_per_row, 0);

  std::vector<std::uint64_t> sent(n, 0), received(n, 0);
  const double log1mp = full ? 0.0 : std::log1p(-result.p_used);
  for (Vertex u = 0; u < n; ++u) {
    if (full) {
      sent[u] += static_cast<std::uint64_t>(n) * payload_words;
      for (Vertex v = 0; v < n; ++v) received[v] += payload_words;
      continue;
    }
    SplitMix64 rng(mix_keys(seed, u, 0x6f7070ULL));
    std::uint64_t v = 0;
    while (v < n) {
      double u01 = rng.next_unit();
      double skip = std::floor(std::log1p(-u01) / log1mp);
      if (skip >= static_cast<double>(n - v)) break;
      v += static_cast<std::uint64_t>(skip);
      holds[v * words_per_row + (u >> 6)] |= 1ULL << (u & 63);
      receivers_of[u].push_back(static_cast<Vertex>(v));
      sent[u] += payload_words;
      received[v] += payload_words;
      ++v;
    }
  }
  const std::uint64_t budget = network.per_vertex_budget();
  for (Vertex v = 0; v < n; ++v) {
    if (sent[v] > budget) {
      throw OverloadedVertex(v, OverloadedVertex::Direction::Send, sent[v],
                             budget);
    }
    if (received[v] > budget) {
      throw OverloadedVertex(v, OverloadedVertex::Direction::Receive,
                             received[v], budget);
    }
  }
  network.charge_rounds(2);
  std::vector<std::uint64_t> reply_sent(n, 0), reply_received(n, 0);

  // Phase 2: for each u, any vertex holding u's full closure resolves it.
  result.outputs.assign(n, 0);
  std::vector<std::uint8_t> seen(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    std::vector<Vertex> closure{u};
    std::fill(seen.begin(), seen.end(), 0);
    seen[u] = 1;
    std::deque<std::pair<Vertex, std::uint32_t>> queue{{u, 0}};
    while (!queue.empty()) {
      auto [w, d] = queue.front();
      queue.pop_front();
      if (d == task.tau) continue;
      for (Vertex x : task.receive_from[w]) {
        if (!seen[x]) {
          seen[x] = 1;
          closure.push_back(x);
          queue.emplace_back(x, d + 1);
        }
      }
    }
    std::sort(closure.begin(), closure.end());

    Vertex resolver = UINT32_MAX;
    if (closure.size() == 1 && closure[0] == u) {
      resolver = u;  // local output, no help needed
    } else if (full) {
      resolver = 0;
    } else {
      for (Vertex cand : receivers_of[closure[0]]) {
        bool ok = true;
        for (Vertex w : closure) {
          if (!(holds[cand * words_per_row + (w >> 6)] & (1ULL << (w & 63)))) {
            ok = false;
            break;
          }
        }
        if (ok) {
          resolver = cand;
          break;
        }
      }
    }
    if (resolver == UINT32_MAX) {
      result.unresolved.push_back(u);
      continue;
    }
    std::vector<std::pair<Vertex, std::uint64_t>> gathered;
    gathered.reserve(closure.size());
    for (Vertex w : closure) gathered.emplace_back(w, task.input[w]);
    result.outputs[u] = task.compute(u, gathered);
    if (resolver != u) {
      reply_sent[resolver] += out_words;
      reply_received[u] += out_words;
    }
  }
  network.charge_rounds(2);
  return result;
}

namespace {

struct HighDegRun {
  const ListColoringInstance& instance;
  const CliqueConfig& config;
  std::uint64_t seed;
  CliqueNetwork network;

  Coloring coloring;
  std::vector<Palette> current;
  CliqueTrace trace;
  std::uint64_t level_counter = 0;

  HighDegRun(const ListColoringInstance& inst, const CliqueConfig& cfg,
             std::uint64_t sd)
      : instance(inst), config(cfg), seed(sd),
        network(inst.n(), cfg.c_lenzen, cfg.lenzen_rounds),
        coloring(inst.n()), current(inst.palettes()) {}

  // Ship the induced subgraph to its minimum-id member and color greedily.
  std::uint64_t gather_and_color(const Graph& sub,
                                 const std::vector<Vertex>& ids) {
    if (ids.empty()) return 0;
    Vertex leader = *std::min_element(ids.begin(), ids.end());
    std::vector<RoutingRequest> requests;
    requests.reserve(ids.size());
    std::uint64_t words = 0;
    std::vector<Palette> sub_pal(sub.n());
    for (Vertex s = 0; s < sub.n(); ++s) {
      std::vector<Color> res = current[ids[s]].colors;
      std::uint64_t keep =
          std::min<std::uint64_t>(res.size(), sub.degree(s) + 1);
      res.resize(keep);
      sub_pal[s] = Palette{std::move(res)};
      std::uint64_t w = 2 + keep + 2ULL * sub.degree(s);
      words += w;
      if (ids[s] != leader) {
        requests.push_back({ids[s], leader, w});
      }
    }
    network.route_batched(requests);

    ListColoringInstance sub_inst(sub, std::move(sub_pal), 0);
    Coloring local = greedy_list_color(sub_inst);
    std::vector<RoutingRequest> replies;
    for (Vertex s = 0; s < sub.n(); ++s) {
      coloring.assignment[ids[s]] = local.assignment[s];
      if (ids[s] != leader) replies.push_back({leader, ids[s], 1});
    }
    network.route_batched(replies);
    return words;
  }

  // Per-part leader coloring restricted to the part's color class. Vertices
  // that cannot be colored inside the class are deferred to the leftover.
  std::uint64_t color_part(const std::vector<Vertex>& part_ids,
                           const PartitionOutcome& outcome,
                           const std::vector<Vertex>& sub_ids,
                           std::uint32_t part,
                           const ListColoringInstance& level_inst,
                           std::vector<Vertex>& deferred) {
    if (part_ids.empty()) return 0;
    Vertex leader = UINT32_MAX;
    for (Vertex s : part_ids) leader = std::min(leader, sub_ids[s]);

    auto [sub, local_ids] = level_inst.graph().induced(part_ids);
    std::vector<Palette> pal(sub.n());
    std::vector<RoutingRequest> requests;
    std::uint64_t words = 0;
    for (Vertex s = 0; s < sub.n(); ++s) {
      Vertex level_v = local_ids[s];
      std::vector<Color> mine;
      for (Color c : level_inst.palette(level_v).colors) {
        if (outcome.part_of_color(c) == part) mine.push_back(c);
      }
      std::uint64_t keep =
          std::min<std::uint64_t>(mine.size(), sub.degree(s) + 1);
      mine.resize(keep);
      pal[s] = Palette{std::move(mine)};
      std::uint64_t w = 2 + keep + 2ULL * sub.degree(s);
      words += w;
      Vertex orig = sub_ids[level_v];
      if (orig != leader) requests.push_back({orig, leader, w});
    }
    network.route_batched(requests);

    // Greedy in ascending id; a vertex with no free class color is deferred.
    std::vector<RoutingRequest> replies;
    std::vector<Color> taken;
    for (Vertex s = 0; s < sub.n(); ++s) {
      taken.clear();
      for (Vertex u : sub.neighbors(s)) {
        if (u < s) {
          Vertex orig_u = sub_ids[local_ids[u]];
          if (coloring.assigned(orig_u)) {
            taken.push_back(coloring.assignment[orig_u]);
          }
        }
      }
      std::sort(taken.begin(), taken.end());
      Color pick = kUncolored;
      for (Color c : pal[s].colors) {
        if (!std::binary_search(taken.begin(), taken.end(), c)) {
          pick = c;
          break;
        }
      }
      Vertex orig = sub_ids[local_ids[s]];
      if (pick == kUncolored) {
        deferred.push_back(orig);
      } else {
        coloring.assignment[orig] = pick;
        if (orig != leader) replies.push_back({leader, orig, 1});
      }
    }
    network.route_batched(replies);
    return words;
  }

  void broadcast_seed(const PartitionOutcome& outcome,
                      const std::vector<Vertex>& members) {
    // The color seed travels to seed_words relays (one word each), then each
    // relay forwards its word to every member; both batches fit the budget.
    std::uint64_t seed_words = outcome.color_seed.independence() + 2;
    if (members.size() < 2) return;
    Vertex source = members.front();
    std::vector<std::uint64_t> sourced(network.n(), 0), destined(network.n(), 0);
    for (std::uint64_t i = 0; i < seed_words; ++i) {
      Vertex relay = members[i % members.size()];
      if (relay == source) continue;
      sourced[source] += 1;
      destined[relay] += 1;
    }
    network.lenzen_bulk(sourced, destined);

    std::fill(sourced.begin(), sourced.end(), 0);
    std::fill(destined.begin(), destined.end(), 0);
    for (std::uint64_t i = 0; i < seed_words; ++i) {
      Vertex relay = members[i % members.size()];
      sourced[relay] += members.size() - 1;
    }
    for (Vertex m : members) destined[m] += seed_words;
    for (std::uint64_t i = 0; i < seed_words; ++i) {
      destined[members[i % members.size()]] -= 1;  // relays keep their word
    }
    network.lenzen_bulk(sourced, destined);
  }

  CliqueRunResult run() {
    std::vector<Vertex> active(instance.n());
    std::iota(active.begin(), active.end(), 0);
    const std::uint64_t n0 = instance.n();
    std::uint64_t prev_delta = UINT64_MAX;

    while (true) {
      auto [sub, ids] = instance.graph().induced(active);
      const std::uint64_t delta = sub.max_degree();

      if (delta * active.size() <= config.c_stop * n0 || active.empty()) {
        std::uint64_t words = gather_and_color(sub, ids);
        trace.per_level.push_back({delta, active.size(), words});
        break;
      }
      if (delta >= prev_delta) {
        throw InvariantBreach("leftover degree did not decrease");
      }

      std::vector<Palette> sub_pal(sub.n());
      for (Vertex s = 0; s < sub.n(); ++s) sub_pal[s] = current[ids[s]];
      ListColoringInstance level_inst(sub, std::move(sub_pal), 0);

      PartitionParams params =
          derive_params(delta, n0, config.gamma, config.cq, config.q_cap);
      params.c_min = config.partition_c_min;
      PartitionOutcome outcome = partition_instance(
          level_inst, params, mix_keys(seed, 0x636c71, level_counter));
      broadcast_seed(outcome, ids);

      std::uint64_t level_words = 0;
      std::vector<Vertex> deferred;
      for (std::uint32_t i = 0; i < outcome.parts; ++i) {
        level_words += color_part(outcome.b_vertices[i], outcome, ids, i,
                                  level_inst, deferred);
      }
      trace.deferred += deferred.size();

      // Leftover pruning: colored vertices announce their color to
      // uncolored neighbors; accounted as one Lenzen-style bulk batch.
      std::vector<Vertex> next;
      next.reserve(outcome.l_vertices.size() + deferred.size());
      for (Vertex s : outcome.l_vertices) next.push_back(ids[s]);
      next.insert(next.end(), deferred.begin(), deferred.end());
      std::sort(next.begin(), next.end());

      // Colored vertices announce their color to uncolored neighbors.
      std::vector<std::uint64_t> sourced(network.n(), 0),
          destined(network.n(), 0);
      for (Vertex v : next) {
        for (Vertex u : instance.graph().neighbors(v)) {
          if (coloring.assigned(u)) {
            sourced[u] += 1;
            destined[v] += 1;
          }
        }
        current[v] = Palette{
            residual_palette(instance.graph(), current, coloring, v)};
      }
      std::uint64_t prune_words =
          std::accumulate(destined.begin(), destined.end(), std::uint64_t{0});
      network.lenzen_bulk(sourced, destined);
      level_words += prune_words;

      // The leftover keeps at least g_L(v) colors after the class coloring.
      for (Vertex s : outcome.l_vertices) {
        if (current[ids[s]].size() < outcome.available[s]) {
          throw InvariantBreach("leftover palette below g_L");
        }
      }

      trace.per_level.push_back({delta, active.size(), level_words});
      ++trace.depth;
      ++level_counter;
      prev_delta = delta;
      active = std::move(next);
    }

    trace.rounds = network.rounds();
    trace.path = "highdeg";
    return {std::move(coloring), std::move(trace)};
  }
};

}  // namespace

CliqueRunResult run_highdeg_coloring(const ListColoringInstance& instance,
                                     const CliqueConfig& config,
                                     std::uint64_t seed) {
  const double threshold =
      config.c_min *
      std::pow(std::log10(static_cast<double>(
                   std::max<Vertex>(instance.n(), 10))),
               4.0 + config.eps);
  if (static_cast<double>(instance.delta()) < threshold) {
    throw DegreeTooLow(instance.delta(), threshold);
  }
  HighDegRun run(instance, config, seed);
  return run.run();
}

namespace {

// Small-degree path: sparsified bidding over the id-oriented residual view,
// then a leader cleans up the bad components. Falls back to plain leader
// greedy when the excess floor is degenerate.
CliqueRunResult run_smalldeg(const ListColoringInstance& instance,
                             const CliqueConfig& config, std::uint64_t seed) {
  CliqueNetwork network(instance.n(), config.c_lenzen, config.lenzen_rounds);
  CliqueTrace trace;
  GoodInstance good = GoodInstance::derive(instance, config.c0, config.beta);

  if (good.p_star < config.p_star_floor) {
    // Degenerate excess floor; one leader colors everything.
    std::vector<Vertex> all(instance.n());
    std::iota(all.begin(), all.end(), 0);
    std::vector<RoutingRequest> requests;
    for (Vertex v = 1; v < instance.n(); ++v) {
      std::uint64_t w = 2 + instance.graph().degree(v) + 1 +
                        2ULL * instance.graph().degree(v);
      requests.push_back({v, 0, w});
    }
    network.route_batched(requests);
    Coloring coloring = greedy_list_color(instance);
    trace.rounds = network.rounds();
    trace.path = "greedy-fallback";
    return {std::move(coloring), std::move(trace)};
  }

  BiddingParams params = BiddingParams::derive(
      config.c0, config.beta, good.p_star, instance.delta());
  BiddingOutcome outcome = sparsified_coloring(good, params, seed);

  // Pre-processing: sequences are exchanged with full neighborhoods once.
  {
    std::vector<std::uint64_t> sent(instance.n(), 0), received(instance.n(), 0);
    for (Vertex v = 0; v < instance.n(); ++v) {
      sent[v] = received[v] = instance.graph().degree(v);
    }
    network.direct_round(sent, received);
  }
  // Main iterations: each vertex reads only its sparsified neighborhood.
  {
    std::vector<std::uint64_t> reverse_count(instance.n(), 0);
    for (Vertex v = 0; v < instance.n(); ++v) {
      for (Vertex u : outcome.nstar[v]) reverse_count[u] += 1;
    }
    for (std::size_t i = 0; i < outcome.iterations.size(); ++i) {
      std::vector<std::uint64_t> sent(reverse_count);
      std::vector<std::uint64_t> received(instance.n(), 0);
      for (Vertex v = 0; v < instance.n(); ++v) {
        received[v] = outcome.nstar[v].size();
      }
      network.direct_round(sent, received);
    }
  }

  std::vector<Vertex> leftover = outcome.uncolored();
  if (!leftover.empty()) {
    Vertex gather_leader = leftover.front();
    std::vector<RoutingRequest> gather;
    for (Vertex v : leftover) {
      if (v == gather_leader) continue;
      std::uint64_t w = 2 + instance.graph().degree(v) + 1;
      gather.push_back({v, gather_leader, w});
    }
    network.route_batched(gather);
  }
  Coloring full = color_components(instance, leftover, outcome.coloring);

  trace.rounds = network.rounds();
  trace.path = "smalldeg";
  trace.depth = 0;
  return {std::move(full), std::move(trace)};
}

}  // namespace

CliqueRunResult run_clique_coloring(const ListColoringInstance& instance,
                                    const CliqueConfig& config,
                                    std::uint64_t seed) {
  if (instance.n() == 0) {
    CliqueTrace trace;
    trace.path = "empty";
    return {Coloring(0), std::move(trace)};
  }
  const double threshold =
      config.c_min *
      std::pow(std::log10(static_cast<double>(
                   std::max<Vertex>(instance.n(), 10))),
               4.0 + config.eps);
  if (static_cast<double>(instance.delta()) >= threshold) {
    return run_highdeg_coloring(instance, config, seed);
  }
  return run_smalldeg(instance, config, seed);
}

}  // namespace colorsim
