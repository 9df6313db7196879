#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holelab/certificate.hpp"
#include "holelab/errors.hpp"
#include "holelab/graph.hpp"
#include "holelab/rng.hpp"
#include "holelab/vertex_set.hpp"

namespace holelab {

/// Zone size: ceil(eps L), at least 1.
inline std::size_t zone_size(std::size_t L, double epsilon) {
  detail::require(epsilon >= 0.0 && epsilon <= 1.0, "epsilon must lie in [0, 1]");
  const double raw = std::ceil(epsilon * static_cast<double>(L) - 1e-9);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::max(raw, 0.0)));
}

/// max(3, round(sqrt(d) / log^4 d)).
inline std::size_t effective_L(double d) {
  if (!(d > 1.0)) return 3;
  const double ld = std::log(d);
  const double raw = std::round(std::sqrt(d) / (ld * ld * ld * ld));
  return std::max<std::size_t>(3, static_cast<std::size_t>(raw));
}

/// Directed vertex-disjoint paths, all of order L, that together induce a
/// linear forest. The first `zone` vertices of a component form its head
/// zone, the last `zone` its tail zone.
struct LinearForest {
  std::size_t L = 0;
  std::size_t zone = 1;
  std::vector<VertexPath> components;

  std::size_t order() const noexcept { return L * components.size(); }
  bool empty() const noexcept { return components.empty(); }

  std::span<const Vertex> head_zone(std::size_t i) const {
    return std::span<const Vertex>(components.at(i)).first(zone);
  }
  std::span<const Vertex> tail_zone(std::size_t i) const {
    return std::span<const Vertex>(components.at(i)).last(zone);
  }

  InducedCertificate certificate() const { return linear_forest_certificate(components); }

  VertexSet vertex_set(std::size_t n) const {
    VertexSet s(n);
    for (const auto& p : components)
      for (Vertex v : p) s.insert(v);
    return s;
  }
};

struct ForestBudget {
  /// Growth attempts per eligible start vertex.
  std::size_t tries_per_start = 1;
  /// Total attempts over the whole build; 0 means no limit.
  std::size_t max_attempts = 0;
};

struct ForestStats {
  std::size_t attempts = 0;
  std::size_t restarts = 0;  ///< attempts that hit a dead end
  std::size_t components = 0;
  std::size_t order = 0;
  std::vector<std::string> flags;
};

struct ForestBuild {
  LinearForest forest;
  ForestStats stats;
};

namespace detail {

/// Incremental state for growing induced paths next to a fixed forest.
/// `blocked[v]` counts forest vertices in N[v]; `touch[v]` counts current
/// path vertices in N(v).
class PathGrower {
public:
  PathGrower(const Graph& g, const VertexSet& allowed)
      : g_(g), allowed_(allowed), blocked_(g.n(), 0), touch_(g.n(), 0), on_path_(g.n(), 0) {}

  bool eligible(Vertex v) const { return allowed_.contains(v) && blocked_[v] == 0; }

  /// Adds v and its neighbours to the blocked region.
  void block(Vertex v) {
    ++blocked_[v];
    for (Vertex w : g_.neighbors(v)) ++blocked_[w];
  }

  /// Grows from `start` until order `target` or a dead end. On a dead end
  /// with `keep_partial` false the path is dropped and nullopt returned.
  std::optional<VertexPath> grow(Vertex start, std::size_t target, Rng& rng, bool keep_partial) {
    if (!eligible(start)) return std::nullopt;
    VertexPath path;
    push(start, path);
    std::vector<Vertex> cand;
    while (path.size() < target) {
      cand.clear();
      const Vertex head = path.back();
      for (Vertex w : g_.neighbors(head))
        if (!on_path_[w] && touch_[w] == 1 && eligible(w)) cand.push_back(w);
      if (cand.empty()) break;
      push(cand[rng.below(cand.size())], path);
    }
    for (Vertex v : path) pop(v);
    if (path.size() < target && !keep_partial) return std::nullopt;
    return path;
  }

private:
  void push(Vertex v, VertexPath& path) {
    path.push_back(v);
    on_path_[v] = 1;
    for (Vertex w : g_.neighbors(v)) ++touch_[w];
  }
  void pop(Vertex v) {
    on_path_[v] = 0;
    for (Vertex w : g_.neighbors(v)) --touch_[w];
  }

  const Graph& g_;
  const VertexSet& allowed_;
  std::vector<std::uint32_t> blocked_;
  std::vector<std::uint32_t> touch_;
  std::vector<std::uint8_t> on_path_;
};

}  // namespace detail

/// One induced path of order exactly L inside `allowed`, avoiding `forbidden`
/// and every neighbour of it. Restarts from fresh random starts on dead ends,
/// at most `max_attempts` times.
inline std::optional<VertexPath> greedy_path_grow(const Graph& g, const VertexSet& allowed,
                                                  const VertexSet& forbidden, std::size_t L,
                                                  RngSeed seed, std::size_t max_attempts = 64) {
  detail::require(L >= 2, "greedy_path_grow: need L >= 2");
  detail::require(allowed.universe() == g.n() && forbidden.universe() == g.n(),
                  "greedy_path_grow: vertex set universe mismatch");
  detail::PathGrower grower(g, allowed);
  forbidden.for_each([&](Vertex v) { grower.block(v); });
  std::vector<Vertex> starts;
  allowed.for_each([&](Vertex v) {
    if (grower.eligible(v)) starts.push_back(v);
  });
  if (starts.empty()) return std::nullopt;
  Rng rng(seed);
  for (std::size_t a = 0; a < max_attempts; ++a) {
    auto path = grower.grow(starts[rng.below(starts.size())], L, rng, false);
    if (path) return path;
  }
  return std::nullopt;
}

/// Greedy induced linear forest with components of order exactly L.
/// Start vertices are visited in a seeded random order; a component that
/// dead-ends is discarded and its vertices become available again.
inline ForestBuild build_linear_forest(const Graph& g, const VertexSet& allowed, std::size_t L,
                                       double epsilon, RngSeed seed, ForestBudget budget = {}) {
  detail::require(L >= 2, "build_linear_forest: need L >= 2");
  detail::require(allowed.universe() == g.n(), "build_linear_forest: universe mismatch");
  ForestBuild out;
  out.forest.L = L;
  out.forest.zone = zone_size(L, epsilon);

  detail::PathGrower grower(g, allowed);
  std::vector<Vertex> starts = allowed.members();
  Rng rng(seed);
  rng.shuffle(starts);
  const std::size_t cap = budget.max_attempts ? budget.max_attempts
                                              : std::numeric_limits<std::size_t>::max();
  for (Vertex s : starts) {
    for (std::size_t t = 0; t < budget.tries_per_start && grower.eligible(s); ++t) {
      if (out.stats.attempts == cap) break;
      ++out.stats.attempts;
      auto path = grower.grow(s, L, rng, false);
      if (!path) {
        ++out.stats.restarts;
        continue;
      }
      for (Vertex v : *path) grower.block(v);
      out.forest.components.push_back(std::move(*path));
    }
    if (out.stats.attempts == cap) {
      out.stats.flags.push_back("attempt budget exhausted");
      break;
    }
  }
  out.stats.components = out.forest.components.size();
  out.stats.order = out.forest.order();
  if (out.forest.empty()) out.stats.flags.push_back("empty forest");
  return out;
}

/// An induced path grown greedily from `start` until it dead-ends.
inline VertexPath greedy_maximal_path(const Graph& g, const VertexSet& allowed, Vertex start,
                                      RngSeed seed) {
  detail::PathGrower grower(g, allowed);
  Rng rng(seed);
  auto path = grower.grow(start, std::numeric_limits<std::size_t>::max(), rng, true);
  return path.value_or(VertexPath{});
}

}  // namespace holelab
