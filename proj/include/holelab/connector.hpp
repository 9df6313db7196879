#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "holelab/certificate.hpp"
#include "holelab/errors.hpp"
#include "holelab/exposure.hpp"
#include "holelab/forest.hpp"
#include "holelab/graph.hpp"
#include "holelab/rng.hpp"
#include "holelab/vertex_set.hpp"

namespace holelab {

// ---------------------------------------------------------------------------
// Auxiliary digraph over forest components

/// Arc from component `from` to component `to`, realised by `connector`,
/// which lands on `tail_vertex` in the tail zone of `from` and on
/// `head_vertex` in the head zone of `to`.
struct AuxEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Vertex connector = 0;
  Vertex tail_vertex = 0;
  Vertex head_vertex = 0;
};

class AuxDigraph {
public:
  AuxDigraph() = default;
  explicit AuxDigraph(std::size_t n) : out_(n) {}

  /// Digraph with bare arcs; connector fields are zero.
  static AuxDigraph from_arcs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& arcs) {
    AuxDigraph d(n);
    for (auto [i, j] : arcs) d.add({i, j, 0, 0, 0});
    return d;
  }

  /// Adds the arc unless (from, to) is already present. Returns whether it was added.
  bool add(const AuxEdge& e) {
    detail::require(e.from < size() && e.to < size(), "aux arc endpoint out of range");
    detail::require(e.from != e.to, "aux arc must join distinct components");
    const auto key = e.from * size() + e.to;
    if (index_.count(key)) return false;
    index_.emplace(key, edges_.size());
    edges_.push_back(e);
    auto& row = out_[e.from];
    row.insert(std::upper_bound(row.begin(), row.end(), e.to), e.to);
    return true;
  }

  std::size_t size() const noexcept { return out_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<AuxEdge>& edges() const noexcept { return edges_; }
  /// Out-neighbours in ascending order.
  const std::vector<std::size_t>& out(std::size_t i) const { return out_.at(i); }

  const AuxEdge* find(std::size_t i, std::size_t j) const {
    auto it = index_.find(i * size() + j);
    return it == index_.end() ? nullptr : &edges_[it->second];
  }
  bool has_arc(std::size_t i, std::size_t j) const { return find(i, j) != nullptr; }

private:
  std::vector<AuxEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::unordered_map<std::size_t, std::size_t> index_;
};

inline constexpr std::size_t max_expansion_check_n = 16;

/// For all disjoint S, T of size k there is an arc from S to T. Exhaustive
/// over k-subsets S: the hypothesis fails iff some S leaves k vertices
/// outside S and its out-neighbourhood.
inline bool check_expansion(const AuxDigraph& d, std::size_t k) {
  const std::size_t n = d.size();
  if (n > max_expansion_check_n) throw SizeError("check_expansion: N exceeds 16");
  detail::require(k >= 1, "check_expansion: need k >= 1");
  if (2 * k > n) return true;
  std::vector<std::uint32_t> out(n, 0);
  for (const auto& e : d.edges()) out[e.from] |= 1u << e.to;
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  std::uint32_t s = (1u << k) - 1;
  while (s <= full) {
    std::uint32_t reach = 0;
    for (std::uint32_t x = s; x; x &= x - 1) reach |= out[std::countr_zero(x)];
    if (static_cast<std::size_t>(std::popcount(full & ~(s | reach))) >= k) return false;
    const std::uint32_t c = s & -s, r = s + c;  // next subset of the same size
    if (r == 0 || r > full) break;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return true;
}

/// Sampled form: true when none of `trials` random disjoint (S, T) pairs
/// lacks an arc from S to T.
inline bool check_expansion_sampled(const AuxDigraph& d, std::size_t k, std::size_t trials,
                                    RngSeed seed) {
  detail::require(k >= 1, "check_expansion_sampled: need k >= 1");
  const std::size_t n = d.size();
  if (2 * k > n) return true;
  std::vector<std::size_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  std::vector<std::uint8_t> in_t(n);
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    for (std::size_t i = 0; i < 2 * k; ++i) std::swap(ids[i], ids[i + rng.below(n - i)]);
    std::fill(in_t.begin(), in_t.end(), 0);
    for (std::size_t i = k; i < 2 * k; ++i) in_t[ids[i]] = 1;
    bool hit = false;
    for (std::size_t i = 0; i < k && !hit; ++i)
      for (std::size_t w : d.out(ids[i]))
        if (in_t[w]) {
          hit = true;
          break;
        }
    if (!hit) return false;
  }
  return true;
}

/// The deepest DFS stack over a full traversal, restarting at unvisited
/// vertices in index order and scanning out-neighbours in ascending order.
inline std::vector<std::size_t> dfs_long_path(const AuxDigraph& d) {
  const std::size_t n = d.size();
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::size_t> next(n, 0), stack, best;
  for (std::size_t r = 0; r < n; ++r) {
    if (seen[r]) continue;
    seen[r] = 1;
    stack.assign(1, r);
    if (best.empty()) best = stack;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      const auto& row = d.out(v);
      while (next[v] < row.size() && seen[row[next[v]]]) ++next[v];
      if (next[v] == row.size()) {
        stack.pop_back();
        continue;
      }
      const std::size_t w = row[next[v]++];
      seen[w] = 1;
      stack.push_back(w);
      if (stack.size() > best.size()) best = stack;
    }
  }
  return best;
}

/// Longest segment path[a..b] closed by an arc path[b] -> path[a]; empty if
/// there is none.
inline std::vector<std::size_t> cycle_from_path(const AuxDigraph& d, const std::vector<std::size_t>& path) {
  std::size_t ba = 0, bb = 0;
  for (std::size_t b = 1; b < path.size(); ++b)
    for (std::size_t a = 0; a + bb - ba < b; ++a)
      if (d.has_arc(path[b], path[a])) {
        ba = a;
        bb = b;
        break;
      }
  if (bb == 0) return {};
  return {path.begin() + static_cast<std::ptrdiff_t>(ba), path.begin() + static_cast<std::ptrdiff_t>(bb) + 1};
}

/// Longest cycle closed by an arc into the DFS stack during the same
/// traversal as dfs_long_path; empty if D is acyclic.
inline std::vector<std::size_t> dfs_long_cycle(const AuxDigraph& d) {
  const std::size_t n = d.size();
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::size_t> next(n, 0), stack, best;
  std::vector<std::size_t> depth(n, 0);  // 1 + stack position while on the stack
  for (std::size_t r = 0; r < n; ++r) {
    if (seen[r]) continue;
    seen[r] = 1;
    stack.assign(1, r);
    depth[r] = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      const auto& row = d.out(v);
      if (next[v] == row.size()) {
        depth[v] = 0;
        stack.pop_back();
        continue;
      }
      const std::size_t w = row[next[v]++];
      if (depth[w]) {
        const std::size_t len = stack.size() - (depth[w] - 1);
        if (len > best.size())
          best.assign(stack.begin() + static_cast<std::ptrdiff_t>(depth[w] - 1), stack.end());
      } else if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
        depth[w] = stack.size();
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Pipeline state and stages

enum class Stage { init, v0_exposed, reservoir_built, v1_exposed, forest_built, connected };

inline const char* to_string(Stage s) {
  switch (s) {
    case Stage::init: return "init";
    case Stage::v0_exposed: return "v0-exposed";
    case Stage::reservoir_built: return "reservoir-built";
    case Stage::v1_exposed: return "v1-exposed";
    case Stage::forest_built: return "forest-built";
    case Stage::connected: return "connected";
  }
  return "?";
}

struct PipelineState {
  Stage stage = Stage::init;
  double d = 0;
  double epsilon = 0;
  VertexSet v0;
  VertexSet independent;  ///< I
  VertexSet v1;
  LinearForest forest;
  ForestStats forest_stats;
  AuxDigraph aux;
  std::vector<std::string> flags;
};

/// Stream ids of the exposure rounds, one per stage.
namespace stream {
inline constexpr std::uint64_t v0 = 1, i_to_rest = 2, v1 = 3, forest = 4, remaining = 5, fallback = 6;
}

namespace detail {

inline void expect_stage(const PipelineState& st, Stage want, const char* op) {
  if (st.stage != want)
    throw ExposureOrderError(std::string(op) + ": expected stage " + to_string(want) + ", found " +
                             to_string(st.stage));
}

}  // namespace detail

/// |V0| = floor(n / (2d)), the lowest ids; reveals both layers inside V0 and
/// drops the higher endpoint of every edge found there.
inline PipelineState build_reservoir(StagedSample& s, double d) {
  detail::require(s.rounds() == 0, "build_reservoir: sample already has exposed rounds");
  detail::require(d > 0, "build_reservoir: need d > 0");
  const std::size_t n = s.n();
  const auto size0 = static_cast<std::size_t>(std::floor(static_cast<double>(n) / (2.0 * d)));
  PipelineState st;
  st.d = d;
  st.v0 = size0 ? VertexSet::range(n, 0, static_cast<Vertex>(size0 - 1)) : VertexSet(n);
  s.expose(st.v0, st.v0, Layer::both, RngSeed{s.master_seed(), stream::v0});
  st.stage = Stage::v0_exposed;

  st.independent = st.v0;
  for (Layer layer : {Layer::g1, Layer::g2})
    for (auto [u, v] : s.edges(layer)) st.independent.erase(std::max(u, v));
  const auto want = static_cast<std::size_t>(std::floor(static_cast<double>(n) / (3.0 * d)));
  if (st.independent.count() < want)
    st.flags.push_back("degraded: |I| = " + std::to_string(st.independent.count()) + " < " +
                       std::to_string(want));
  st.stage = Stage::reservoir_built;
  return st;
}

/// Reveals g1 between I and [n] \ V0, sets V1 = [n] \ (I u N_g1(I)), then
/// reveals both layers inside V1.
inline void restrict_and_expose_v1(PipelineState& st, StagedSample& s) {
  detail::expect_stage(st, Stage::reservoir_built, "restrict_and_expose_v1");
  const std::size_t n = s.n();
  s.expose(st.independent, st.v0.complement(), Layer::g1, RngSeed{s.master_seed(), stream::i_to_rest});
  VertexSet hit = st.independent;
  for (auto [u, v] : s.edges(Layer::g1)) {
    if (st.independent.contains(u)) hit.insert(v);
    if (st.independent.contains(v)) hit.insert(u);
  }
  st.v1 = hit.complement();
  if (2 * st.v1.count() < n)
    st.flags.push_back("degraded: |V1| = " + std::to_string(st.v1.count()) + " < n/2");
  s.expose(st.v1, st.v1, Layer::both, RngSeed{s.master_seed(), stream::v1}, OnOverlap::skip_revealed);
  st.stage = Stage::v1_exposed;
}

/// Induced linear forest inside V1 on the graph revealed so far.
inline void build_forest_stage(PipelineState& st, const StagedSample& s, std::size_t L, double epsilon,
                               ForestBudget budget = {}) {
  detail::expect_stage(st, Stage::v1_exposed, "build_forest_stage");
  detail::require(2 * zone_size(L, epsilon) <= L, "head and tail zones overlap: need 2 ceil(eps L) <= L");
  st.epsilon = epsilon;
  auto built = build_linear_forest(s.union_graph(), st.v1, L, epsilon,
                                   RngSeed{s.master_seed(), stream::forest}, budget);
  st.forest = std::move(built.forest);
  st.forest_stats = std::move(built.stats);
  for (const auto& f : st.forest_stats.flags) st.flags.push_back("forest: " + f);
  st.stage = Stage::forest_built;
}

/// Installs a prebuilt forest, for hand-made instances.
inline void set_forest(PipelineState& st, LinearForest forest, double epsilon) {
  detail::require(2 * forest.zone <= forest.L, "head and tail zones overlap");
  st.epsilon = epsilon;
  st.forest = std::move(forest);
  st.forest_stats.components = st.forest.components.size();
  st.forest_stats.order = st.forest.order();
  st.stage = Stage::forest_built;
}

/// Reveals every remaining pair, then adds arc (i, j) for each a in I with
/// exactly two g2-edges into V(F), one in the tail zone of component i and
/// one in the head zone of component j != i. The first connector per arc is
/// kept.
inline const AuxDigraph& build_aux_digraph(PipelineState& st, StagedSample& s) {
  detail::expect_stage(st, Stage::forest_built, "build_aux_digraph");
  const std::size_t n = s.n();
  const auto all = VertexSet::all(n);
  s.expose(all, all, Layer::both, RngSeed{s.master_seed(), stream::remaining}, OnOverlap::skip_revealed);

  const auto& forest = st.forest;
  const std::size_t N = forest.components.size(), L = forest.L, zone = forest.zone;
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(n, none), pos(n, 0);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < forest.components[i].size(); ++j) {
      comp[forest.components[i][j]] = i;
      pos[forest.components[i][j]] = j;
    }
  const Graph g1 = s.layer_graph(Layer::g1), g2 = s.layer_graph(Layer::g2);
  auto in_tail = [&](Vertex v) { return pos[v] + zone >= L; };
  auto in_head = [&](Vertex v) { return pos[v] < zone; };

  st.aux = AuxDigraph(N);
  st.independent.for_each([&](Vertex a) {
    for (Vertex w : g1.neighbors(a))
      if (comp[w] != none) throw InternalInvariantError("g1 edge between I and the forest");
    Vertex land[2];
    std::size_t hits = 0;
    for (Vertex w : g2.neighbors(a))
      if (comp[w] != none && hits++ < 2) land[hits - 1] = w;
    if (hits != 2) return;
    for (int flip = 0; flip < 2; ++flip) {
      const Vertex u = land[flip], w = land[1 - flip];
      if (comp[u] != comp[w] && in_tail(u) && in_head(w)) st.aux.add({comp[u], comp[w], a, u, w});
    }
  });
  st.stage = Stage::connected;
  return st.aux;
}

// ---------------------------------------------------------------------------
// Stitching

/// Components visited in order, joined by arcs. When `closed`, the last arc
/// returns to the first component.
struct AuxWalk {
  std::vector<std::size_t> components;
  std::vector<AuxEdge> links;
  bool closed = false;
};

inline AuxWalk walk_along(const AuxDigraph& d, const std::vector<std::size_t>& comps, bool closed) {
  AuxWalk w{comps, {}, closed};
  const std::size_t m = comps.size();
  const std::size_t arcs = closed ? m : (m ? m - 1 : 0);
  for (std::size_t t = 0; t < arcs; ++t) {
    const auto* e = d.find(comps[t], comps[(t + 1) % m]);
    detail::require(e != nullptr, "walk_along: consecutive components are not joined by an arc");
    w.links.push_back(*e);
  }
  return w;
}

/// Joins the walk into one vertex sequence: each component is cut from its
/// entry (the head-zone landing of the incoming connector, or index 0) to its
/// exit (the tail-zone landing of the outgoing connector, or index L - 1),
/// with connectors in between. The result is audited against `g`.
inline InducedCertificate stitch(const LinearForest& forest, const AuxWalk& walk, const Graph& g) {
  const std::size_t m = walk.components.size();
  detail::require(m > 0, "stitch: empty walk");
  detail::require(walk.links.size() == (walk.closed ? m : m - 1), "stitch: wrong number of links");
  if (walk.closed) detail::require(m >= 2, "stitch: a closed walk needs two components");
  auto index_in = [&](std::size_t c, Vertex v) {
    const auto& p = forest.components.at(c);
    const auto it = std::find(p.begin(), p.end(), v);
    if (it == p.end()) throw InternalInvariantError("stitch: connector landing outside its component");
    return static_cast<std::size_t>(it - p.begin());
  };
  VertexPath seq;
  for (std::size_t t = 0; t < m; ++t) {
    const std::size_t c = walk.components[t];
    const auto& p = forest.components.at(c);
    const bool has_in = walk.closed || t > 0;
    const bool has_out = walk.closed || t + 1 < m;
    const std::size_t entry = has_in ? index_in(c, walk.links[(t + m - 1) % m].head_vertex) : 0;
    const std::size_t exit = has_out ? index_in(c, walk.links[t].tail_vertex) : p.size() - 1;
    if (entry > exit) throw InternalInvariantError("stitch: entry after exit");
    seq.insert(seq.end(), p.begin() + static_cast<std::ptrdiff_t>(entry),
               p.begin() + static_cast<std::ptrdiff_t>(exit) + 1);
    if (has_out) seq.push_back(walk.links[t].connector);
  }
  if (walk.closed) {
    if (!is_induced_cycle(g, seq)) throw InternalInvariantError("stitch: result is not an induced cycle");
    return cycle_certificate(seq);
  }
  if (!is_induced_path(g, seq)) throw InternalInvariantError("stitch: result is not an induced path");
  return path_certificate(seq);
}

// ---------------------------------------------------------------------------
// Cycle fallbacks

/// Closes an induced path through one outside vertex x: if x meets the path
/// at consecutive positions i < j of its contact list, path[i..j] + x is an
/// induced cycle. Returns the longest such cycle.
inline std::optional<VertexPath> close_through_outside(const Graph& g, const VertexPath& path) {
  std::unordered_map<Vertex, std::size_t> at;
  for (std::size_t i = 0; i < path.size(); ++i) at.emplace(path[i], i);
  std::map<Vertex, std::vector<std::size_t>> contacts;
  for (std::size_t i = 0; i < path.size(); ++i)
    for (Vertex x : g.neighbors(path[i]))
      if (!at.count(x)) contacts[x].push_back(i);
  std::optional<VertexPath> best;
  for (const auto& [x, ps] : contacts)
    for (std::size_t t = 0; t + 1 < ps.size(); ++t) {
      const std::size_t len = ps[t + 1] - ps[t] + 2;
      if (best && best->size() >= len) continue;
      VertexPath cyc(path.begin() + static_cast<std::ptrdiff_t>(ps[t]),
                     path.begin() + static_cast<std::ptrdiff_t>(ps[t + 1]) + 1);
      cyc.push_back(x);
      best = std::move(cyc);
    }
  return best;
}

/// Shortcuts chords until the cycle is induced.
inline VertexPath make_chordless(const Graph& g, VertexPath cyc) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::unordered_map<Vertex, std::size_t> at;
    for (std::size_t i = 0; i < cyc.size(); ++i) at.emplace(cyc[i], i);
    for (std::size_t i = 0; i < cyc.size() && !changed; ++i)
      for (Vertex x : g.neighbors(cyc[i])) {
        auto it = at.find(x);
        if (it == at.end()) continue;
        const std::size_t j = it->second;
        if (j <= i + 1 || (i == 0 && j + 1 == cyc.size())) continue;
        cyc = VertexPath(cyc.begin() + static_cast<std::ptrdiff_t>(i),
                         cyc.begin() + static_cast<std::ptrdiff_t>(j) + 1);
        changed = true;
        break;
      }
  }
  return cyc;
}

/// Some induced cycle of g, or nullopt if g is a forest.
inline std::optional<VertexPath> any_induced_cycle(const Graph& g) {
  const std::size_t n = g.n();
  std::vector<Vertex> parent(n), depth(n, 0);
  std::vector<std::uint8_t> seen(n, 0);
  for (Vertex r = 0; r < n; ++r) {
    if (seen[r]) continue;
    seen[r] = 1;
    parent[r] = r;
    std::vector<Vertex> queue{r};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const Vertex v = queue[h];
      for (Vertex w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = v;
          depth[w] = depth[v] + 1;
          queue.push_back(w);
        } else if (w != parent[v] && parent[w] != v) {
          VertexPath left{v}, right{w};
          while (left.back() != right.back()) {
            if (depth[left.back()] >= depth[right.back()])
              left.push_back(parent[left.back()]);
            else
              right.push_back(parent[right.back()]);
          }
          right.pop_back();
          left.insert(left.end(), right.rbegin(), right.rend());
          return make_chordless(g, std::move(left));
        }
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// End-to-end run

struct PipelineConfig {
  std::size_t n = 0;
  double d = 0;
  double epsilon = 0.1;
  std::size_t L = 0;           ///< 0: effective_L(d)
  std::optional<double> p2{};  ///< default d / (n log d)
  bool cycle = false;
  std::uint64_t seed = 0;
  ForestBudget budget{};
};

struct PipelineReport {
  double p = 0, p1 = 0, p2 = 0;
  std::size_t L = 0, zone = 0;
  Stage stage = Stage::init;
  std::vector<std::string> flags;
  std::size_t v0_size = 0, independent_size = 0, v1_size = 0;
  ForestStats forest;
  std::size_t aux_vertices = 0, aux_edges = 0;
  std::size_t aux_path_length = 0;  ///< arcs on the DFS path in D
  std::string source;               ///< how the final object was obtained
  InducedCertificate certificate;
  std::size_t order = 0;   ///< vertices in the final object
  std::size_t length = 0;  ///< edges in the final object
  bool verified = false;
};

inline double default_p2(std::size_t n, double d) {
  detail::require(d > 1.0, "default p2 needs d > 1");
  return d / (static_cast<double>(n) * std::log(d));
}

inline PipelineReport run_pipeline(const PipelineConfig& cfg) {
  detail::require(cfg.n >= 2, "pipeline: need n >= 2");
  detail::require(cfg.d > 0 && cfg.d < static_cast<double>(cfg.n), "pipeline: need 0 < d < n");
  PipelineReport r;
  r.p = cfg.d / static_cast<double>(cfg.n);
  r.p2 = cfg.p2 ? *cfg.p2 : default_p2(cfg.n, cfg.d);
  r.L = cfg.L ? cfg.L : effective_L(cfg.d);
  r.zone = zone_size(r.L, cfg.epsilon);
  StagedSample s(cfg.n, r.p, r.p2, cfg.seed);
  r.p1 = s.p1();

  PipelineState st = build_reservoir(s, cfg.d);
  restrict_and_expose_v1(st, s);
  build_forest_stage(st, s, r.L, cfg.epsilon, cfg.budget);
  build_aux_digraph(st, s);
  const Graph g = s.union_graph();

  const auto path = dfs_long_path(st.aux);
  r.aux_path_length = path.empty() ? 0 : path.size() - 1;
  std::optional<InducedCertificate> path_cert;
  if (!path.empty()) path_cert = stitch(st.forest, walk_along(st.aux, path, false), g);

  if (!cfg.cycle) {
    if (path_cert) {
      r.certificate = *path_cert;
      r.source = "aux-path";
    } else {
      r.certificate = path_certificate({});
      r.source = "none";
    }
  } else if (auto cyc = dfs_long_cycle(st.aux); cyc.size() >= 2) {
    r.certificate = stitch(st.forest, walk_along(st.aux, cyc, true), g);
    r.source = "aux-cycle";
  } else {
    std::optional<VertexPath> found;
    if (path_cert) found = close_through_outside(g, path_cert->vertices);
    if (found) {
      r.source = "path-closure";
    } else {
      Rng rng(RngSeed{cfg.seed, stream::fallback});
      const auto all = VertexSet::all(cfg.n);
      for (int attempt = 0; attempt < 8 && !found; ++attempt) {
        const auto start = static_cast<Vertex>(rng.below(cfg.n));
        found = close_through_outside(
            g, greedy_maximal_path(g, all, start, RngSeed{cfg.seed, stream::fallback}.child(attempt)));
      }
      if (found) r.source = "greedy-closure";
    }
    if (!found && (found = any_induced_cycle(g))) r.source = "chordless-cycle";
    if (found) {
      r.certificate = cycle_certificate(*found);
    } else {
      r.certificate = InducedCertificate{CertificateKind::cycle, {}, {}, std::nullopt};
      r.source = "none";
      st.flags.push_back("graph has no cycle");
    }
    if (r.source != "aux-cycle" && r.source != "none") st.flags.push_back("cycle via fallback: " + r.source);
  }

  const auto& vs = r.certificate.vertices;
  if (!vs.empty()) {
    r.verified = cfg.cycle ? is_induced_cycle(g, vs) : is_induced_path(g, vs);
    if (!r.verified) throw InternalInvariantError("pipeline result failed the induced check");
  }
  r.order = vs.size();
  r.length = cfg.cycle ? vs.size() : (vs.empty() ? 0 : vs.size() - 1);
  r.stage = st.stage;
  r.flags = std::move(st.flags);
  r.v0_size = st.v0.count();
  r.independent_size = st.independent.count();
  r.v1_size = st.v1.count();
  r.forest = std::move(st.forest_stats);
  r.aux_vertices = st.aux.size();
  r.aux_edges = st.aux.edge_count();
  return r;
}

}  // namespace holelab
