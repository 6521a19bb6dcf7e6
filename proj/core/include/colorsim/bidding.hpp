#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "colorsim/instance.hpp"
#include "colorsim/trace.hpp"

namespace colorsim {

/// The iteration parameter sequence C_0..C_{k-1}: each step squares-up by
/// C' = 2*ceil(min(exp(C/6)*C/2, cap)/2) - 2 with cap = log2(pStar)^beta,
/// stopping at the capped fixed point. Every value past C_0 is even.
struct CSequence {
  std::vector<std::int64_t> values;
  std::size_t iterations() const { return values.size(); }
};

/// Throws ParameterError when the cap is below 2 or the recurrence fails to
/// make progress (c0 too small for the growth step).
CSequence c_sequence(std::int64_t c0, double p_star, double beta);

struct BiddingParams {
  CSequence cseq;
  std::uint64_t k2 = 0;   // ceil(log2(pStar)^beta), size of T_v
  std::uint64_t l3 = 0;   // ceil(log2(pStar)^3)
  std::uint64_t seq_len = 0;          // K = k2 * l3, length of each R_v^(i)
  std::uint64_t overload_threshold = 0;  // K^2 * ceil(log2 delta)

  static BiddingParams derive(std::int64_t c0, double beta,
                              std::uint64_t p_star, std::uint64_t delta);
};

/// Residual DAG-oriented instance with per-vertex excess floors. Out-edges
/// point to smaller ids, so the orientation is reconstructible from
/// adjacency alone.
struct GoodInstance {
  ListColoringInstance instance;
  std::vector<std::uint64_t> excess;  // p_v
  std::uint64_t p_star = 0;
  std::int64_t c0 = 8;
  double beta = 2.0;

  /// p_v = |palette(v)| - deg(v), pStar = min.
  static GoodInstance derive(ListColoringInstance inst, std::int64_t c0,
                             double beta);

  std::vector<Vertex> out_neighbors(Vertex v) const;

  /// Violated invariants, empty when the instance is good.
  std::vector<std::string> check(double p_star_factor = 1.0) const;
};

struct GoodInstanceSpec {
  Vertex n = 0;
  std::uint32_t delta = 64;
  std::uint64_t palette_size = 0;  // 0 = 2*delta + 1
  std::int64_t c0 = 8;
  double beta = 2.0;
};

/// Synthetic generator standing in for the pre-phase black box: random
/// graph with out-degree at most delta/c0 and palettes large enough that
/// the goodness conditions hold by construction. Throws InfeasibleSpec when
/// they cannot.
GoodInstance generate_good_instance(const GoodInstanceSpec& spec,
                                    std::uint64_t seed);

/// Two-stage scan of the pre-sampled sequence R: collects distinct colors
/// not in `taken` until k2 are found, snapshotting the first k1 as S.
/// Returns ({}, {}) when the budget runs out first.
std::pair<std::vector<Color>, std::vector<Color>> sample_colors(
    std::uint64_t k1, std::uint64_t k2, std::span<const Color> taken,
    std::span<const Color> sequence);

enum class VertexPhase : std::uint8_t { Active, Colored, Bad };

struct BiddingOutcome {
  Coloring coloring;
  std::vector<VertexPhase> phase;
  std::vector<std::uint8_t> colored_at;  // iteration index, 255 = never
  std::vector<BiddingIterStats> iterations;
  std::vector<std::vector<Vertex>> nstar;
  // Per iteration, whether each vertex was active at the start (bit per
  // vertex), for audits.
  std::vector<std::vector<std::uint8_t>> active_at_start;
  std::vector<std::vector<std::uint8_t>> overloaded_at;

  std::vector<Vertex> uncolored() const;
  bool same_assignment(const BiddingOutcome& other) const;
};

enum class BiddingMode { Full, NStarRestricted };

/// Runs the k iterations of sparsified color bidding with all color
/// sequences fixed up-front from (seed, vertex, iteration) tapes.
BiddingOutcome sparsified_coloring(const GoodInstance& good,
                                   const BiddingParams& params,
                                   std::uint64_t seed,
                                   BiddingMode mode = BiddingMode::Full);

/// Re-executes the pipeline reading, for each vertex, only the state of
/// N*(v) and itself. Bit-identical to the full run on the same seed.
BiddingOutcome replay_with_nstar(const GoodInstance& good,
                                 const BiddingParams& params,
                                 std::uint64_t seed);

/// N*(v) from the fixed sequences alone: neighbors significant at some
/// iteration where v is not overloaded.
std::vector<Vertex> compute_nstar(const GoodInstance& good,
                                  const BiddingParams& params,
                                  std::uint64_t seed, Vertex v);

struct HonestyAudit {
  std::int64_t c_target = 0;
  std::uint64_t d_target = 0;
  std::vector<Vertex> violators;
  std::vector<double> reciprocal_sum;       // per audited vertex
  std::vector<std::uint64_t> max_sig_count; // per audited vertex
  std::vector<Vertex> audited;
  bool all_honest() const { return violators.empty(); }
};

/// (C_i, D_i)-honesty of every vertex active at the start of iteration i,
/// with D_0 = 0 and D_{i+1} = D_i + 2K. Read-only over the outcome.
HonestyAudit audit_honesty(const GoodInstance& good,
                           const BiddingParams& params, std::uint64_t seed,
                           const BiddingOutcome& outcome, std::uint32_t i);

}  // namespace colorsim
