#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "holelab/certificate.hpp"
#include "holelab/errors.hpp"
#include "holelab/graph.hpp"

namespace holelab {

/// Result of an exhaustive search: the optimum order and one maximiser.
struct OracleResult {
  std::size_t optimum = 0;
  InducedCertificate witness;
  std::uint64_t nodes_explored = 0;
};

inline constexpr std::size_t max_path_oracle_n = 24;
inline constexpr std::size_t max_tmatching_oracle_n = 20;
inline constexpr std::size_t max_tmatching_tree_order = 5;
inline constexpr std::size_t max_copy_count_n = 12;
inline constexpr std::size_t max_copy_count_pattern = 8;
inline constexpr std::size_t max_intersection_n = 9;
inline constexpr std::size_t max_intersection_pattern = 5;

namespace detail {

/// Among equal-size sets, the one whose sorted member list is
/// lexicographically smaller.
inline bool lex_smaller(std::uint32_t a, std::uint32_t b) {
  const std::uint32_t diff = a ^ b;
  return diff != 0 && (a & (diff & (~diff + 1u))) != 0;
}

inline bool better(std::uint32_t cand, std::uint32_t best, bool have_best) {
  if (!have_best) return true;
  const int pc = std::popcount(cand), pb = std::popcount(best);
  return pc > pb || (pc == pb && lex_smaller(cand, best));
}

/// Orders the vertices of a set inducing a path, from its smaller endpoint.
inline VertexPath walk_path(const std::vector<std::uint32_t>& adj, std::uint32_t set) {
  VertexPath out;
  if (!set) return out;
  Vertex start = 0;
  for (std::uint32_t rest = set; rest; rest &= rest - 1) {
    const auto v = static_cast<Vertex>(std::countr_zero(rest));
    if (std::popcount(adj[v] & set) <= 1) {
      start = v;
      break;
    }
  }
  std::uint32_t left = set;
  Vertex cur = start;
  while (true) {
    out.push_back(cur);
    left &= ~(std::uint32_t{1} << cur);
    const std::uint32_t next = adj[cur] & left;
    if (!next) break;
    cur = static_cast<Vertex>(std::countr_zero(next));
  }
  return out;
}

/// Orders a set inducing a cycle, starting from its smallest member and
/// stepping to the smaller of its two neighbours first.
inline VertexPath walk_cycle(const std::vector<std::uint32_t>& adj, std::uint32_t set) {
  VertexPath out;
  std::uint32_t left = set;
  auto cur = static_cast<Vertex>(std::countr_zero(set));
  while (true) {
    out.push_back(cur);
    left &= ~(std::uint32_t{1} << cur);
    const std::uint32_t next = adj[cur] & left;
    if (!next) break;
    cur = static_cast<Vertex>(std::countr_zero(next));
  }
  return out;
}

inline std::uint32_t mask_of(std::size_t n) {
  return n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
}

}  // namespace detail

/// Largest induced path by subset DP: reach[S] holds the endpoints v such
/// that S induces a path ending at v. A vertex w extends S at v iff v is its
/// only neighbour in S.
inline OracleResult max_induced_path(const Graph& g) {
  const std::size_t n = g.n();
  if (n > max_path_oracle_n)
    throw SizeError("max_induced_path: n = " + std::to_string(n) + " exceeds cap 24");
  OracleResult r;
  if (n == 0) {
    r.witness = path_certificate({});
    return r;
  }
  const auto adj = adjacency_masks(g);
  std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
  for (std::size_t v = 0; v < n; ++v) reach[std::size_t{1} << v] = std::uint32_t{1} << v;

  std::uint32_t best = 0;
  bool have = false;
  const std::uint32_t full = detail::mask_of(n);
  for (std::uint32_t s = 1; s != 0 && s <= full; ++s) {
    const std::uint32_t ends = reach[s];
    if (!ends) continue;
    ++r.nodes_explored;
    if (detail::better(s, best, have)) {
      best = s;
      have = true;
    }
    for (std::uint32_t out = full & ~s; out; out &= out - 1) {
      const auto w = static_cast<unsigned>(std::countr_zero(out));
      const std::uint32_t touch = adj[w] & s;
      if (touch && !(touch & (touch - 1)) && (touch & ends))
        reach[s | (std::uint32_t{1} << w)] |= std::uint32_t{1} << w;
    }
    if (s == full) break;
  }
  r.optimum = static_cast<std::size_t>(std::popcount(best));
  r.witness = path_certificate(detail::walk_path(adj, best));
  return r;
}

/// Largest induced cycle, or optimum 0 on a forest. For each root r (the
/// cycle's smallest vertex) a DP grows induced paths from r through higher
/// vertices; a vertex adjacent to exactly {r, endpoint} closes a hole.
inline OracleResult max_induced_cycle(const Graph& g) {
  const std::size_t n = g.n();
  if (n > max_path_oracle_n)
    throw SizeError("max_induced_cycle: n = " + std::to_string(n) + " exceeds cap 24");
  OracleResult r;
  const auto adj = adjacency_masks(g);
  std::uint32_t best = 0;
  bool have = false;

  for (std::size_t root = 0; root + 2 < n; ++root) {
    const std::size_t m = n - 1 - root;  // candidates root+1 .. n-1
    const std::uint32_t rbit = std::uint32_t{1} << root;
    const auto shift = static_cast<unsigned>(root + 1);
    std::vector<std::uint32_t> reach(std::size_t{1} << m, 0);
    reach[0] = rbit;
    const std::uint32_t local_full = detail::mask_of(m);
    for (std::uint32_t t = 0;; ++t) {
      const std::uint32_t ends = reach[t];
      if (ends) {
        ++r.nodes_explored;
        const std::uint32_t s = rbit | (t << shift);
        for (std::uint32_t out = local_full & ~t; out; out &= out - 1) {
          const auto li = static_cast<unsigned>(std::countr_zero(out));
          const unsigned w = li + shift;
          const std::uint32_t touch = adj[w] & s;
          if (!touch) continue;
          if (!(touch & (touch - 1))) {
            if (touch & ends) reach[t | (std::uint32_t{1} << li)] |= std::uint32_t{1} << w;
          } else if (t != 0 && std::popcount(touch) == 2 && (touch & rbit) &&
                     (touch & ends & ~rbit)) {
            const std::uint32_t cyc = s | (std::uint32_t{1} << w);
            if (detail::better(cyc, best, have)) {
              best = cyc;
              have = true;
            }
          }
        }
      }
      if (t == local_full) break;
    }
  }
  if (!have) {
    r.witness = InducedCertificate{CertificateKind::cycle, {}, {}, std::nullopt};
    return r;
  }
  r.optimum = static_cast<std::size_t>(std::popcount(best));
  r.witness = cycle_certificate(detail::walk_cycle(adj, best));
  return r;
}

/// Largest vertex set inducing disjoint copies of the tree T, by subset
/// enumeration.
inline OracleResult max_induced_t_matching(const Graph& g, const Graph& tree) {
  const std::size_t n = g.n();
  if (!is_tree(tree)) throw InputError("max_induced_t_matching: pattern is not a tree");
  if (tree.n() > max_tmatching_tree_order) throw SizeError("tree order exceeds cap 5");
  if (n > max_tmatching_oracle_n)
    throw SizeError("max_induced_t_matching: n = " + std::to_string(n) + " exceeds cap 20");

  const auto adj = adjacency_masks(g);
  const std::size_t t = tree.n();
  const auto want = detail::tree_canonical_form(detail::local_adjacency(tree));
  std::unordered_map<std::uint32_t, bool> iso_cache;
  auto component_ok = [&](std::uint32_t comp) {
    auto [it, fresh] = iso_cache.try_emplace(comp, false);
    if (!fresh) return it->second;
    std::vector<Vertex> vs;
    for (std::uint32_t x = comp; x; x &= x - 1) vs.push_back(static_cast<Vertex>(std::countr_zero(x)));
    std::vector<std::vector<std::size_t>> local(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = 0; j < vs.size(); ++j)
        if (adj[vs[i]] >> vs[j] & 1u) local[i].push_back(j);
    it->second = detail::tree_canonical_form(local) == want;
    return it->second;
  };

  OracleResult r;
  std::uint32_t best = 0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t s64 = 1; s64 < limit; ++s64) {
    const auto s = static_cast<std::uint32_t>(s64);
    const auto size = static_cast<std::size_t>(std::popcount(s));
    if (size % t || size < static_cast<std::size_t>(std::popcount(best))) continue;
    ++r.nodes_explored;
    std::size_t twice = 0;
    for (std::uint32_t x = s; x; x &= x - 1) twice += static_cast<std::size_t>(std::popcount(adj[std::countr_zero(x)] & s));
    if (twice != 2 * (size - size / t)) continue;
    bool ok = true;
    for (std::uint32_t left = s; left && ok;) {
      std::uint32_t comp = left & (~left + 1u), frontier = comp;
      while (frontier) {
        std::uint32_t grow = 0;
        for (std::uint32_t x = frontier; x; x &= x - 1) grow |= adj[std::countr_zero(x)] & s;
        frontier = grow & ~comp;
        comp |= grow;
      }
      ok = static_cast<std::size_t>(std::popcount(comp)) == t && component_ok(comp);
      left &= ~comp;
    }
    if (ok && detail::better(s, best, best != 0)) best = s;
  }

  std::vector<std::vector<Vertex>> parts;
  for (std::uint32_t left = best; left;) {
    std::uint32_t comp = left & (~left + 1u), frontier = comp;
    while (frontier) {
      std::uint32_t grow = 0;
      for (std::uint32_t x = frontier; x; x &= x - 1) grow |= adj[std::countr_zero(x)] & best;
      frontier = grow & ~comp;
      comp |= grow;
    }
    parts.emplace_back();
    for (std::uint32_t x = comp; x; x &= x - 1) parts.back().push_back(static_cast<Vertex>(std::countr_zero(x)));
    left &= ~comp;
  }
  r.optimum = static_cast<std::size_t>(std::popcount(best));
  r.witness = t_matching_certificate(g, parts, tree);
  return r;
}

/// Number of injections sigma: V(F) -> V(g) for which F_sigma is induced.
inline std::uint64_t count_labelled_induced_copies(const Graph& g, const Graph& pattern) {
  if (pattern.n() > max_copy_count_pattern || g.n() > max_copy_count_n)
    throw SizeError("count_labelled_induced_copies: needs |F| <= 8 and n <= 12");
  const auto gadj = adjacency_masks(g);
  const auto fadj = adjacency_masks(pattern);
  const std::size_t k = pattern.n(), n = g.n();
  if (k > n) return 0;
  std::vector<Vertex> image(k);
  std::uint64_t count = 0;
  auto place = [&](auto&& self, std::size_t x, std::uint32_t used) -> void {
    if (x == k) {
      ++count;
      return;
    }
    for (Vertex y = 0; y < n; ++y) {
      if (used >> y & 1u) continue;
      bool ok = true;
      for (std::size_t earlier = 0; earlier < x && ok; ++earlier)
        ok = ((fadj[x] >> earlier) & 1u) == ((gadj[y] >> image[earlier]) & 1u);
      if (!ok) continue;
      image[x] = y;
      self(self, x + 1, used | (std::uint32_t{1} << y));
    }
  };
  place(place, 0, 0);
  return count;
}

/// Compatible injections grouped by the shape (s, c) of their intersection
/// graph with a fixed placement sigma0.
struct IntersectionTable {
  std::size_t k = 0;
  /// counts[s][c]: compatible sigma whose intersection graph has s vertices
  /// and c components.
  std::vector<std::vector<std::uint64_t>> counts;
  std::uint64_t incompatible = 0;
  std::uint64_t total = 0;

  std::uint64_t at(std::size_t s, std::size_t c) const {
    return s <= k && c <= k ? counts[s][c] : 0;
  }
};

/// Enumerates every injection sigma: V(F) -> [n] and materialises its
/// intersection graph with sigma0 explicitly.
inline IntersectionTable compatible_intersection_table(const Graph& pattern,
                                                      const std::vector<Vertex>& sigma0,
                                                      std::size_t n) {
  const std::size_t k = pattern.n();
  if (k > max_intersection_pattern || n > max_intersection_n)
    throw SizeError("compatible_intersection_table: needs |F| <= 5 and n <= 9");
  detail::require(sigma0.size() == k, "sigma0 must map every vertex of F");
  std::uint32_t used0 = 0;
  for (Vertex y : sigma0) {
    detail::require(y < n, "sigma0 image out of range");
    detail::require(!(used0 >> y & 1u), "sigma0 must be injective");
    used0 |= std::uint32_t{1} << y;
  }
  const auto fadj = adjacency_masks(pattern);
  std::vector<int> pre0(n, -1);
  for (std::size_t x = 0; x < k; ++x) pre0[sigma0[x]] = static_cast<int>(x);

  IntersectionTable table;
  table.k = k;
  table.counts.assign(k + 1, std::vector<std::uint64_t>(k + 1, 0));
  std::vector<Vertex> sigma(k);
  auto visit = [&] {
    ++table.total;
    std::vector<int> pre(n, -1);
    for (std::size_t x = 0; x < k; ++x) pre[sigma[x]] = static_cast<int>(x);
    std::vector<Vertex> shared;
    for (Vertex y = 0; y < n; ++y)
      if (pre[y] >= 0 && pre0[y] >= 0) shared.push_back(y);
    const std::size_t s = shared.size();
    std::vector<std::vector<std::size_t>> inter(s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i + 1; j < s; ++j) {
        const bool in_sigma = fadj[pre[shared[i]]] >> pre[shared[j]] & 1u;
        const bool in_sigma0 = fadj[pre0[shared[i]]] >> pre0[shared[j]] & 1u;
        if (in_sigma != in_sigma0) {
          ++table.incompatible;
          return;
        }
        if (in_sigma) {
          inter[i].push_back(j);
          inter[j].push_back(i);
        }
      }
    ++table.counts[s][detail::components(inter).size()];
  };
  auto place = [&](auto&& self, std::size_t x, std::uint32_t used) -> void {
    if (x == k) {
      visit();
      return;
    }
    for (Vertex y = 0; y < n; ++y) {
      if (used >> y & 1u) continue;
      sigma[x] = y;
      self(self, x + 1, used | (std::uint32_t{1} << y));
    }
  };
  place(place, 0, 0);
  return table;
}

inline std::uint64_t count_compatible_intersections(const Graph& pattern,
                                                    const std::vector<Vertex>& sigma0,
                                                    std::size_t n, std::size_t s, std::size_t c) {
  return compatible_intersection_table(pattern, sigma0, n).at(s, c);
}

}  // namespace holelab
