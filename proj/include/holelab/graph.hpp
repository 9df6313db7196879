#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "holelab/errors.hpp"
#include "holelab/vertex_set.hpp"

namespace holelab {

using Edge = std::pair<Vertex, Vertex>;

/// Ordered vertex sequence; direction is the sequence order.
using VertexPath = std::vector<Vertex>;

/// Immutable undirected simple graph on [0, n).
///
/// Neighbourhoods are stored as sorted rows in one contiguous array, so
/// graphs with a few million edges at n = 10^5 stay cheap to build and share.
class Graph {
public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), offsets_(n + 1, 0) {}

  /// Builds from an edge list. Pairs are normalised to u < v and duplicates
  /// collapse; self-loops and out-of-range ids are rejected.
  static Graph from_edges(std::size_t n, std::vector<Edge> edges) {
    for (auto& [u, v] : edges) {
      detail::require(u < n && v < n, "edge endpoint out of range");
      detail::require(u != v, "self-loop in edge list");
      if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Graph g(n);
    for (auto [u, v] : edges) {
      ++g.offsets_[u + 1];
      ++g.offsets_[v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.targets_.assign(g.offsets_[n], 0);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    // Edges are sorted, so row x receives its smaller neighbours (as v) before
    // its larger ones (as u), each in ascending order.
    for (auto [u, v] : edges) {
      g.targets_[fill[u]++] = v;
      g.targets_[fill[v]++] = u;
    }
    g.edge_count_ = edges.size();
    return g;
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    check(v);
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }

  bool has_edge(Vertex u, Vertex v) const {
    check(u);
    check(v);
    auto row = neighbors(degree(u) <= degree(v) ? u : v);
    Vertex other = degree(u) <= degree(v) ? v : u;
    return std::binary_search(row.begin(), row.end(), other);
  }

  /// All edges as (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  void check(Vertex v) const {
    if (v >= n_) throw InputError("vertex id " + std::to_string(v) + " out of range");
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.offsets_ == b.offsets_ && a.targets_ == b.targets_;
  }

private:
  std::size_t n_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
};

/// Adjacency rows as 32-bit masks, for the exhaustive small-n routines.
inline std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
  if (g.n() > 32) throw SizeError("adjacency masks need n <= 32");
  std::vector<std::uint32_t> rows(g.n(), 0);
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v : g.neighbors(u)) rows[u] |= std::uint32_t{1} << v;
  return rows;
}

/// Number of edges of g[vertices]; duplicates in `vertices` are ignored.
inline std::size_t induced_edge_count(const Graph& g, std::span<const Vertex> vertices) {
  VertexSet in(g.n());
  for (Vertex v : vertices) {
    g.check(v);
    in.insert(v);
  }
  std::size_t twice = 0;
  in.for_each([&](Vertex v) {
    for (Vertex w : g.neighbors(v)) twice += in.contains(w);
  });
  return twice / 2;
}

namespace detail {

inline bool all_distinct(const Graph& g, std::span<const Vertex> vs) {
  VertexSet seen(g.n());
  for (Vertex v : vs) {
    g.check(v);
    if (seen.contains(v)) return false;
    seen.insert(v);
  }
  return true;
}

}  // namespace detail

/// True iff `path` is a chordless path of g. A single vertex is a path.
inline bool is_induced_path(const Graph& g, std::span<const Vertex> path) {
  for (Vertex v : path) g.check(v);
  if (path.empty() || !detail::all_distinct(g, path)) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!g.has_edge(path[i], path[i + 1])) return false;
  return induced_edge_count(g, path) == path.size() - 1;
}

/// True iff `cycle` (closing edge implied) is a chordless cycle of g.
inline bool is_induced_cycle(const Graph& g, std::span<const Vertex> cycle) {
  if (cycle.size() < 3) throw InputError("a cycle needs at least 3 vertices");
  for (Vertex v : cycle) g.check(v);
  if (!detail::all_distinct(g, cycle)) return false;
  for (std::size_t i = 0; i < cycle.size(); ++i)
    if (!g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
  return induced_edge_count(g, cycle) == cycle.size();
}

inline bool is_independent_set(const Graph& g, std::span<const Vertex> set) {
  return induced_edge_count(g, set) == 0;
}

}  // namespace holelab
