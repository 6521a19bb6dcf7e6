#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "colorsim/instance.hpp"
#include "colorsim/rng.hpp"
#include "colorsim/trace.hpp"

namespace colorsim {

struct RoutingRequest {
  Vertex source = 0;
  Vertex destination = 0;
  std::uint64_t words = 1;
};

struct CliqueConfig {
  double c_lenzen = 4.0;       // per-vertex source/sink budget, in units of n
  std::uint64_t lenzen_rounds = 2;
  double c_stop = 8.0;         // recursion base: delta * |V| <= c_stop * n
  double c_min = 0.5;          // high-degree precondition constant
  double eps = 0.1;            // exponent 4+eps for the precondition
  double gamma = 2.0;
  double cq = 3.0;
  double q_cap = 0.4;          // progress cap on the leftover probability
  double partition_c_min = 0.0;  // pipelines skip the standalone check
  std::uint64_t p_star_floor = 16;
  int c0 = 8;
  double beta = 2.0;
};

/// Round-synchronous all-to-all network with per-vertex word accounting.
/// Direct sends are capped at n-1 words per vertex per round; Lenzen
/// batches are accounted separately with a c_lenzen * n budget.
class CliqueNetwork {
public:
  CliqueNetwork(Vertex n, double c_lenzen = 4.0,
                std::uint64_t lenzen_rounds = 2);

  Vertex n() const { return n_; }
  std::uint64_t rounds() const { return rounds_; }
  std::uint64_t total_words() const { return total_sent_; }

  /// Charges one synchronous round of direct messages. `sent`/`received`
  /// must balance; each vertex is capped at n-1 words.
  void direct_round(const std::vector<std::uint64_t>& sent,
                    const std::vector<std::uint64_t>& received);

  /// Delivers a batch of point-to-point requests, Lenzen-style: every vertex
  /// may source and sink at most c_lenzen * n words. Charges lenzen_rounds
  /// rounds. Throws OverloadedVertex when the precondition fails.
  std::uint64_t lenzen_route(const std::vector<RoutingRequest>& requests);

  /// Splits oversized request lists into several Lenzen batches, never
  /// splitting a single request. Returns rounds consumed.
  std::uint64_t route_batched(std::vector<RoutingRequest> requests);

  /// Aggregate form of lenzen_route for batches described only by per-vertex
  /// word sums (conservation required).
  std::uint64_t lenzen_bulk(const std::vector<std::uint64_t>& sourced,
                            const std::vector<std::uint64_t>& destined);

  void charge_rounds(std::uint64_t r) { rounds_ += r; }
  std::uint64_t per_vertex_budget() const;

private:
  Vertex n_;
  double c_lenzen_;
  std::uint64_t lenzen_rounds_;
  std::uint64_t rounds_ = 0;
  std::uint64_t total_sent_ = 0;
  std::uint64_t total_received_ = 0;
};

/// A tau-round message-passing procedure in canonical form: vertex u's
/// output is a pure function of the inputs and ids in its tau-step
/// N*-closure.
struct SimulationTask {
  std::uint32_t tau = 0;
  std::uint32_t delta_star = 0;
  std::vector<std::vector<Vertex>> receive_from;  // N*(v), subsets of N(v)
  std::vector<std::uint64_t> input;               // per-vertex local input
  std::uint64_t l_in_bits = 64;
  std::uint64_t l_out_bits = 64;
  double p = 0.0;  // 0 = derive from the compliance formula

  /// Output of the local algorithm at `v` given the gathered inputs of its
  /// closure (pairs of (vertex, input), sorted by vertex).
  std::function<std::uint64_t(
      Vertex, const std::vector<std::pair<Vertex, std::uint64_t>>&)>
      compute;
};

struct OpportunisticResult {
  std::vector<std::uint64_t> outputs;   // defined where resolved
  std::vector<std::uint32_t> unresolved;
  double p_used = 0.0;
};

/// Direct tau-round execution: gathers the closure of every vertex and
/// applies the task function. The oracle for the simulation below.
std::vector<std::uint64_t> direct_local_execution(const SimulationTask& task);

/// Two-phase opportunistic simulation: every ordered pair ships with
/// probability p, then any holder of a full closure computes the output.
/// Vertices without a holder are reported unresolved, not hidden.
OpportunisticResult opportunistic_simulate(CliqueNetwork& network,
                                           const SimulationTask& task,
                                           std::uint64_t seed,
                                           double eps = 0.5);

struct CliqueRunResult {
  Coloring coloring;
  CliqueTrace trace;
};

/// Theorem-style high-degree pipeline: recursive partition, per-part leader
/// coloring over palette intersections, leftover recursion with pruned
/// palettes. Requires delta >= c_min * log10(n)^(4+eps).
CliqueRunResult run_highdeg_coloring(const ListColoringInstance& instance,
                                     const CliqueConfig& config,
                                     std::uint64_t seed);

/// Full dispatcher: high-degree pipeline when the degree precondition holds,
/// otherwise the sparsified-bidding path (greedy fallback when the excess
/// floor is degenerate).
CliqueRunResult run_clique_coloring(const ListColoringInstance& instance,
                                    const CliqueConfig& config,
                                    std::uint64_t seed);

}  // namespace colorsim
