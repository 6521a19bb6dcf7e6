#include "colorsim/bidding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "colorsim/errors.hpp"
#include "colorsim/greedy.hpp"
#include "colorsim/generators.hpp"
#include "colorsim/rng.hpp"

namespace colorsim {

CSequence c_sequence(std::int64_t c0, double p_star, double beta) {
  if (c0 < 2) throw ParameterError("c_sequence: C0 must be >= 2");
  if (p_star < 2.0) throw ParameterError("c_sequence: pStar must be >= 2");
  if (beta <= 0.0) throw ParameterError("c_sequence: beta must be positive");
  const double cap = std::pow(std::log2(p_star), beta);
  const std::int64_t cap_even =
      2 * static_cast<std::int64_t>(std::ceil(cap / 2.0)) - 2;
  if (cap_even < 2) {
    throw ParameterError("c_sequence: cap below 2, pStar too small for beta");
  }
  CSequence seq;
  seq.values.push_back(c0);
  while (seq.values.back() != cap_even) {
    double c = static_cast<double>(seq.values.back());
    double x = std::min(0.5 * std::exp(c / 6.0) * c, cap);
    std::int64_t next = 2 * static_cast<std::int64_t>(std::ceil(x / 2.0)) - 2;
    if (next == cap_even) {
      seq.values.push_back(next);
      break;
    }
    if (next < 2 || next <= seq.values.back()) {
      throw ParameterError("c_sequence: recurrence does not reach the cap "
                           "from C0=" + std::to_string(c0));
    }
    if (seq.values.size() > 64) {
      throw ParameterError("c_sequence: iteration bound exceeded");
    }
    seq.values.push_back(next);
  }
  return seq;
}

BiddingParams BiddingParams::derive(std::int64_t c0, double beta,
                                    std::uint64_t p_star,
                                    std::uint64_t delta) {
  if (c0 < 2 || c0 % 2 != 0) {
    throw ParameterError("bidding: C0 must be even and >= 2");
  }
  BiddingParams params;
  double log2p = std::log2(static_cast<double>(std::max<std::uint64_t>(p_star, 2)));
  params.cseq = c_sequence(c0, static_cast<double>(std::max<std::uint64_t>(p_star, 2)), beta);
  params.k2 = static_cast<std::uint64_t>(std::ceil(std::pow(log2p, beta)));
  params.l3 = static_cast<std::uint64_t>(std::ceil(std::pow(log2p, 3.0)));
  params.seq_len = params.k2 * params.l3;
  double log2d = std::ceil(std::log2(static_cast<double>(std::max<std::uint64_t>(delta, 2))));
  params.overload_threshold = static_cast<std::uint64_t>(
      static_cast<double>(params.seq_len) * static_cast<double>(params.seq_len) *
      log2d);
  for (std::int64_t c : params.cseq.values) {
    if (static_cast<std::uint64_t>(c) / 2 > params.k2) {
      throw ParameterError("bidding: C/2 exceeds sample size k2");
    }
  }
  return params;
}

GoodInstance GoodInstance::derive(ListColoringInstance inst, std::int64_t c0,
                                  double beta) {
  GoodInstance good;
  good.c0 = c0;
  good.beta = beta;
  good.excess.resize(inst.n());
  good.p_star = UINT64_MAX;
  for (Vertex v = 0; v < inst.n(); ++v) {
    good.excess[v] = inst.palette(v).size() - inst.graph().degree(v);
    good.p_star = std::min(good.p_star, good.excess[v]);
  }
  if (inst.n() == 0) good.p_star = 0;
  good.instance = std::move(inst);
  return good;
}

std::vector<Vertex> GoodInstance::out_neighbors(Vertex v) const {
  std::vector<Vertex> out;
  for (Vertex u : instance.graph().neighbors(v)) {
    if (u < v) out.push_back(u);
  }
  return out;
}

std::vector<std::string> GoodInstance::check(double p_star_factor) const {
  std::vector<std::string> bad;
  const Graph& g = instance.graph();
  for (Vertex v = 0; v < g.n(); ++v) {
    if (excess[v] == 0 ||
        excess[v] > instance.palette(v).size() - g.degree(v)) {
      bad.push_back("excess floor of vertex " + std::to_string(v) +
                    " out of range");
    }
    double sum = 0.0;
    for (Vertex u : g.neighbors(v)) {
      if (u < v) sum += 1.0 / static_cast<double>(excess[u]);
    }
    if (c0 > 0 && sum > 1.0 / static_cast<double>(c0) + 1e-12) {
      bad.push_back("out-neighbor reciprocal sum of vertex " +
                    std::to_string(v) + " exceeds 1/C0");
    }
  }
  double delta = static_cast<double>(g.max_degree());
  double need = delta <= 2.0 ? 0.0 : p_star_factor * delta / std::log2(delta);
  if (g.n() > 0 && static_cast<double>(p_star) < need) {
    bad.push_back("pStar below delta/log delta");
  }
  return bad;
}

GoodInstance generate_good_instance(const GoodInstanceSpec& spec,
                                    std::uint64_t seed) {
  if (spec.c0 < 1) throw InfeasibleSpec("good instance: C0 must be >= 1");
  std::uint64_t palette_size =
      spec.palette_size == 0 ? 2ULL * spec.delta + 1 : spec.palette_size;
  if (palette_size < static_cast<std::uint64_t>(spec.delta) + 1) {
    throw InfeasibleSpec("good instance: palette smaller than delta + 1");
  }
  std::uint64_t slack = palette_size - spec.delta;  // lower bound on p_v
  std::uint64_t out_cap =
      std::min<std::uint64_t>(spec.delta, slack) /
      static_cast<std::uint64_t>(spec.c0);

  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::uint32_t> degree(spec.n, 0);
  for (Vertex v = 1; v < spec.n; ++v) {
    SplitMix64 rng(mix_keys(seed, v, 0x676f6f64));
    std::uint64_t want = out_cap == 0 ? 0 : rng.next_below(out_cap + 1);
    std::uint64_t placed = 0;
    std::uint64_t attempts = 0;
    while (placed < want && attempts < 8 * (want + 1)) {
      ++attempts;
      Vertex u = static_cast<Vertex>(rng.next_below(v));
      if (degree[u] >= spec.delta || degree[v] >= spec.delta) break;
      bool dup = false;
      for (auto it = edges.rbegin();
           it != edges.rend() && it->second == v; ++it) {
        if (it->first == u) {
          dup = true;
          break;
        }
      }
      if (dup) continue;
      edges.emplace_back(u, v);
      ++degree[u];
      ++degree[v];
      ++placed;
    }
  }
  Graph g = Graph::from_edges(spec.n, edges);
  ListColoringInstance inst = sampled_palette_instance(
      std::move(g), palette_size, 2 * palette_size, mix_keys(seed, 0x70616c32));
  GoodInstance good = GoodInstance::derive(std::move(inst), spec.c0, spec.beta);
  auto violations = good.check();
  if (!violations.empty()) {
    throw InfeasibleSpec("good instance: " + violations.front());
  }
  return good;
}

std::pair<std::vector<Color>, std::vector<Color>> sample_colors(
    std::uint64_t k1, std::uint64_t k2, std::span<const Color> taken,
    std::span<const Color> sequence) {
  if (k1 > k2) throw ParameterError("sample_colors: k1 > k2");
  std::vector<Color> t;
  std::vector<Color> t1;
  for (Color c : sequence) {
    if (std::binary_search(taken.begin(), taken.end(), c)) continue;
    if (std::find(t.begin(), t.end(), c) != t.end()) continue;
    t.push_back(c);
    if (t.size() == k1) t1 = t;
    if (t.size() == k2) return {t1, t};
  }
  return {{}, {}};
}

namespace {

SplitMix64 iteration_stream(std::uint64_t master, Vertex v, std::uint32_t i) {
  return SplitMix64(mix_keys(mix_keys(master, 0x62696464ULL), v, i));
}

// Distinct palette positions drawn in iteration i, as sorted universe ids.
void iteration_color_set(std::uint64_t master, Vertex v, std::uint32_t i,
                         std::uint64_t seq_len,
                         const std::vector<std::uint32_t>& pal_universe,
                         std::vector<std::uint8_t>& mark_scratch,
                         std::vector<std::uint32_t>& out) {
  const std::uint64_t pal = pal_universe.size();
  out.clear();
  if (pal == 0) return;
  SplitMix64 stream = iteration_stream(master, v, i);
  if (mark_scratch.size() < pal) mark_scratch.assign(pal, 0);
  std::fill(mark_scratch.begin(), mark_scratch.begin() + pal, 0);
  for (std::uint64_t j = 0; j < seq_len; ++j) {
    mark_scratch[word_below(stream.next(), pal)] = 1;
  }
  for (std::uint64_t p = 0; p < pal; ++p) {
    if (mark_scratch[p]) out.push_back(pal_universe[p]);
  }
}

constexpr std::size_t kBitmapUniverseLimit = 1u << 15;

struct UniverseBits {
  std::size_t words = 0;
  bool dense = false;
  // dense: one bitmap per vertex; sparse: sorted id vectors.
  std::vector<std::uint64_t> bits;
  std::vector<std::vector<std::uint32_t>> sorted;

  void init(std::size_t n, std::size_t universe) {
    dense = universe <= kBitmapUniverseLimit;
    if (dense) {
      words = (universe + 63) / 64;
      bits.assign(n * words, 0);
    } else {
      sorted.assign(n, {});
    }
  }
  void merge(std::size_t v, const std::vector<std::uint32_t>& ids) {
    if (dense) {
      std::uint64_t* w = bits.data() + v * words;
      for (std::uint32_t id : ids) w[id >> 6] |= 1ULL << (id & 63);
    } else {
      auto& dst = sorted[v];
      std::vector<std::uint32_t> merged;
      merged.reserve(dst.size() + ids.size());
      std::merge(dst.begin(), dst.end(), ids.begin(), ids.end(),
                 std::back_inserter(merged));
      merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
      dst = std::move(merged);
    }
  }
  bool intersects(std::size_t v, const std::vector<std::uint32_t>& ids) const {
    if (dense) {
      const std::uint64_t* w = bits.data() + v * words;
      for (std::uint32_t id : ids) {
        if (w[id >> 6] & (1ULL << (id & 63))) return true;
      }
      return false;
    }
    const auto& s = sorted[v];
    for (std::uint32_t id : ids) {
      if (std::binary_search(s.begin(), s.end(), id)) return true;
    }
    return false;
  }
  bool contains(std::size_t v, std::uint32_t id) const {
    if (dense) {
      return bits[v * words + (id >> 6)] & (1ULL << (id & 63));
    }
    const auto& s = sorted[v];
    return std::binary_search(s.begin(), s.end(), id);
  }
};

struct Engine {
  const GoodInstance& good;
  const BiddingParams& params;
  std::uint64_t seed;
  BiddingMode mode;

  Vertex n;
  std::vector<Color> universe;
  std::vector<std::vector<std::uint32_t>> pal_universe;  // per-vertex ids

  // Fixed-randomness pre-processing products.
  std::vector<std::vector<std::vector<Vertex>>> significant;  // [i][v]
  std::vector<std::vector<std::uint8_t>> overloaded;          // [i][v]
  std::vector<std::vector<Vertex>> nstar;
  std::vector<std::vector<Vertex>> reverse_read;  // who reads v's color

  Engine(const GoodInstance& g, const BiddingParams& p, std::uint64_t s,
         BiddingMode m)
      : good(g), params(p), seed(s), mode(m), n(g.instance.n()) {}

  void preprocess() {
    universe = good.instance.color_universe();
    pal_universe.resize(n);
    for (Vertex v = 0; v < n; ++v) {
      auto& ids = pal_universe[v];
      const auto& colors = good.instance.palette(v).colors;
      ids.reserve(colors.size());
      for (Color c : colors) {
        ids.push_back(static_cast<std::uint32_t>(
            std::lower_bound(universe.begin(), universe.end(), c) -
            universe.begin()));
      }
    }

    const std::uint32_t k =
        static_cast<std::uint32_t>(params.cseq.iterations());
    const Graph& g = good.instance.graph();
    UniverseBits cum;
    cum.init(n, universe.size());
    significant.assign(k, {});
    overloaded.assign(k, {});
    std::vector<std::uint8_t> mark;
    std::vector<std::vector<std::uint32_t>> iter_set(n);
    for (std::uint32_t i = 0; i < k; ++i) {
      for (Vertex v = 0; v < n; ++v) {
        iteration_color_set(seed, v, i, params.seq_len, pal_universe[v], mark,
                            iter_set[v]);
        cum.merge(v, iter_set[v]);
      }
      significant[i].assign(n, {});
      overloaded[i].assign(n, 0);
      for (Vertex v = 0; v < n; ++v) {
        auto& sig = significant[i][v];
        for (Vertex u : g.neighbors(v)) {
          if (cum.intersects(u, iter_set[v])) sig.push_back(u);
        }
        overloaded[i][v] = sig.size() > params.overload_threshold ? 1 : 0;
      }
    }

    nstar.assign(n, {});
    std::vector<std::uint8_t> in_nstar(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      for (std::uint32_t i = 0; i < k; ++i) {
        if (overloaded[i][v]) continue;
        for (Vertex u : significant[i][v]) in_nstar[u] = 1;
      }
      for (Vertex u : g.neighbors(v)) {
        if (in_nstar[u]) {
          nstar[v].push_back(u);
          in_nstar[u] = 0;
        }
      }
    }

    reverse_read.assign(n, {});
    if (mode == BiddingMode::Full) {
      for (Vertex v = 0; v < n; ++v) {
        auto nb = g.neighbors(v);
        reverse_read[v].assign(nb.begin(), nb.end());
      }
    } else {
      for (Vertex w = 0; w < n; ++w) {
        for (Vertex u : nstar[w]) reverse_read[u].push_back(w);
      }
    }
  }

  BiddingOutcome run() {
    preprocess();
    const std::uint32_t k =
        static_cast<std::uint32_t>(params.cseq.iterations());
    const Graph& g = good.instance.graph();

    BiddingOutcome out;
    out.coloring = Coloring(n);
    out.phase.assign(n, VertexPhase::Active);
    out.colored_at.assign(n, 255);
    out.nstar = nstar;

    UniverseBits psi_minus;
    psi_minus.init(n, universe.size());
    std::vector<std::pair<Vertex, std::uint32_t>> pending;

    // Per-iteration scratch.
    std::vector<std::vector<std::uint32_t>> t_set(n);  // first-occurrence order
    std::vector<std::uint32_t> s_size(n, 0);
    std::vector<std::uint32_t> stamp(universe.empty() ? 1 : universe.size(), 0);
    std::uint32_t stamp_tag = 0;

    std::uint64_t colored_total = 0, bad_total = 0;

    for (std::uint32_t i = 0; i < k; ++i) {
      // Refresh who-took-what from the previous iteration.
      for (const auto& [u, cid] : pending) {
        std::vector<std::uint32_t> one{cid};
        for (Vertex w : reverse_read[u]) psi_minus.merge(w, one);
      }
      pending.clear();

      BiddingIterStats st;
      st.i = i;
      st.c = params.cseq.values[i];
      const std::uint64_t k1 = static_cast<std::uint64_t>(st.c) / 2;

      std::vector<std::uint8_t> active(n, 0);
      for (Vertex v = 0; v < n; ++v) {
        active[v] = out.phase[v] == VertexPhase::Active ? 1 : 0;
        if (active[v]) ++st.active;
      }
      out.active_at_start.push_back(active);
      out.overloaded_at.push_back(overloaded[i]);

      // Stage 1: two-stage sampling for every active vertex.
      for (Vertex v = 0; v < n; ++v) {
        if (!active[v]) continue;
        auto& t = t_set[v];
        t.clear();
        s_size[v] = 0;
        if (overloaded[i][v]) {
          ++st.overloaded;
          continue;  // (S, T) reset to empty
        }
        SplitMix64 stream = iteration_stream(seed, v, i);
        const auto& pal = pal_universe[v];
        std::uint32_t s_mark = 0;
        for (std::uint64_t j = 0; j < params.seq_len; ++j) {
          std::uint32_t cid = pal[word_below(stream.next(), pal.size())];
          if (psi_minus.contains(v, cid)) continue;
          if (std::find(t.begin(), t.end(), cid) != t.end()) continue;
          t.push_back(cid);
          if (t.size() == k1) s_mark = static_cast<std::uint32_t>(t.size());
          if (t.size() == params.k2) break;
        }
        if (t.size() == params.k2) {
          s_size[v] = s_mark;
        } else {
          t.clear();  // budget exhausted: (empty, empty)
        }
      }

      // Stage 2: classification over the stage-1 snapshot.
      for (Vertex v = 0; v < n; ++v) {
        if (!active[v]) continue;
        const bool lazy = s_size[v] == 0;
        ++stamp_tag;
        for (Vertex u : g.neighbors(v)) {
          if (u >= v || !active[u]) continue;  // out-neighbors in G
          if (mode == BiddingMode::NStarRestricted &&
              !std::binary_search(nstar[v].begin(), nstar[v].end(), u)) {
            continue;
          }
          for (std::uint32_t idx = 0; idx < s_size[u]; ++idx) {
            stamp[t_set[u][idx]] = stamp_tag;
          }
        }
        std::uint64_t survive = 0;
        for (std::uint32_t cid : t_set[v]) {
          if (stamp[cid] != stamp_tag) ++survive;
        }
        const bool rich = 3 * survive >= t_set[v].size();
        if (lazy) ++st.lazy;
        if (!rich) ++st.not_rich;
        if (!rich || lazy) {
          out.phase[v] = VertexPhase::Bad;
          ++bad_total;
          continue;
        }
        std::uint32_t lucky = UINT32_MAX;
        for (std::uint32_t idx = 0; idx < s_size[v]; ++idx) {
          std::uint32_t cid = t_set[v][idx];
          if (stamp[cid] != stamp_tag && cid < lucky) lucky = cid;
        }
        if (lucky != UINT32_MAX) {
          out.phase[v] = VertexPhase::Colored;
          out.coloring.assignment[v] = universe[lucky];
          out.colored_at[v] = static_cast<std::uint8_t>(i);
          pending.emplace_back(v, lucky);
          ++colored_total;
        }
      }

      st.colored = colored_total;
      st.bad = bad_total;
      for (Vertex v = 0; v < n; ++v) {
        if (active[v]) {
          st.max_nstar = std::max<std::uint64_t>(st.max_nstar, nstar[v].size());
        }
      }
      out.iterations.push_back(st);
    }
    return out;
  }
};

}  // namespace

std::vector<Vertex> BiddingOutcome::uncolored() const {
  std::vector<Vertex> result;
  for (Vertex v = 0; v < coloring.assignment.size(); ++v) {
    if (!coloring.assigned(v)) result.push_back(v);
  }
  return result;
}

bool BiddingOutcome::same_assignment(const BiddingOutcome& other) const {
  return coloring.assignment == other.coloring.assignment &&
         phase == other.phase && colored_at == other.colored_at;
}

BiddingOutcome sparsified_coloring(const GoodInstance& good,
                                   const BiddingParams& params,
                                   std::uint64_t seed, BiddingMode mode) {
  Engine engine(good, params, seed, mode);
  return engine.run();
}

BiddingOutcome replay_with_nstar(const GoodInstance& good,
                                 const BiddingParams& params,
                                 std::uint64_t seed) {
  return sparsified_coloring(good, params, seed,
                             BiddingMode::NStarRestricted);
}

std::vector<Vertex> compute_nstar(const GoodInstance& good,
                                  const BiddingParams& params,
                                  std::uint64_t seed, Vertex v) {
  Engine engine(good, params, seed, BiddingMode::Full);
  engine.preprocess();
  return engine.nstar[v];
}

HonestyAudit audit_honesty(const GoodInstance& good,
                           const BiddingParams& params, std::uint64_t seed,
                           const BiddingOutcome& outcome, std::uint32_t i) {
  if (i >= outcome.active_at_start.size()) {
    throw ConfigError("audit_honesty: iteration not executed");
  }
  const Graph& g = good.instance.graph();
  const Vertex n = g.n();
  std::vector<Color> universe = good.instance.color_universe();

  HonestyAudit audit;
  audit.c_target = params.cseq.values[i];
  audit.d_target = 2ULL * params.seq_len * i;

  // Cumulative sampled sets over iterations < i.
  UniverseBits cum;
  cum.init(n, universe.size());
  if (i > 0) {
    std::vector<std::uint8_t> mark;
    std::vector<std::uint32_t> set;
    for (Vertex v = 0; v < n; ++v) {
      std::vector<std::uint32_t> pal;
      for (Color c : good.instance.palette(v).colors) {
        pal.push_back(static_cast<std::uint32_t>(
            std::lower_bound(universe.begin(), universe.end(), c) -
            universe.begin()));
      }
      for (std::uint32_t it = 0; it < i; ++it) {
        iteration_color_set(seed, v, it, params.seq_len, pal, mark, set);
        cum.merge(v, set);
      }
    }
  }

  const auto& active = outcome.active_at_start[i];
  std::vector<std::uint64_t> sig_count;
  for (Vertex v = 0; v < n; ++v) {
    if (!active[v]) continue;
    audit.audited.push_back(v);
    double sum = 0.0;
    for (Vertex u : g.neighbors(v)) {
      if (u < v && active[u]) sum += 1.0 / static_cast<double>(good.excess[u]);
    }
    std::uint64_t max_sig = 0;
    for (Color c : good.instance.palette(v).colors) {
      std::uint32_t cid = static_cast<std::uint32_t>(
          std::lower_bound(universe.begin(), universe.end(), c) -
          universe.begin());
      std::uint64_t count = 0;
      for (Vertex u : g.neighbors(v)) {
        if (cum.contains(u, cid)) ++count;
      }
      max_sig = std::max(max_sig, count);
    }
    audit.reciprocal_sum.push_back(sum);
    audit.max_sig_count.push_back(max_sig);
    bool honest = sum <= 1.0 / static_cast<double>(audit.c_target) + 1e-12 &&
                  max_sig <= audit.d_target;
    if (!honest) audit.violators.push_back(v);
  }
  return audit;
}

}  // namespace colorsim
