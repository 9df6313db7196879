#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holelab/errors.hpp"
#include "holelab/graph.hpp"

namespace holelab {

enum class CertificateKind { path, cycle, linear_forest, t_matching, independent_set };

inline const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::path: return "path";
    case CertificateKind::cycle: return "cycle";
    case CertificateKind::linear_forest: return "linear-forest";
    case CertificateKind::t_matching: return "T-matching";
    case CertificateKind::independent_set: return "independent-set";
  }
  return "?";
}

/// A vertex set together with the edge set it is claimed to induce.
struct InducedCertificate {
  CertificateKind kind = CertificateKind::independent_set;
  std::vector<Vertex> vertices;
  std::vector<Edge> claimed_edges;
  /// The tree T, required for kind == t_matching.
  std::optional<Graph> pattern;
};

inline InducedCertificate path_certificate(const VertexPath& p) {
  InducedCertificate c{CertificateKind::path, p, {}, std::nullopt};
  for (std::size_t i = 0; i + 1 < p.size(); ++i) c.claimed_edges.emplace_back(p[i], p[i + 1]);
  return c;
}

inline InducedCertificate cycle_certificate(const VertexPath& cyc) {
  InducedCertificate c{CertificateKind::cycle, cyc, {}, std::nullopt};
  for (std::size_t i = 0; i < cyc.size(); ++i)
    c.claimed_edges.emplace_back(cyc[i], cyc[(i + 1) % cyc.size()]);
  return c;
}

inline InducedCertificate linear_forest_certificate(const std::vector<VertexPath>& paths) {
  InducedCertificate c{CertificateKind::linear_forest, {}, {}, std::nullopt};
  for (const auto& p : paths) {
    c.vertices.insert(c.vertices.end(), p.begin(), p.end());
    for (std::size_t i = 0; i + 1 < p.size(); ++i) c.claimed_edges.emplace_back(p[i], p[i + 1]);
  }
  return c;
}

/// Components listed as vertex groups; edges are taken from g.
inline InducedCertificate t_matching_certificate(const Graph& g,
                                                 const std::vector<std::vector<Vertex>>& parts,
                                                 const Graph& tree) {
  InducedCertificate c{CertificateKind::t_matching, {}, {}, tree};
  for (const auto& part : parts) {
    c.vertices.insert(c.vertices.end(), part.begin(), part.end());
    for (std::size_t i = 0; i < part.size(); ++i)
      for (std::size_t j = i + 1; j < part.size(); ++j)
        if (g.has_edge(part[i], part[j])) c.claimed_edges.emplace_back(part[i], part[j]);
  }
  return c;
}

inline InducedCertificate independent_set_certificate(std::vector<Vertex> s) {
  return {CertificateKind::independent_set, std::move(s), {}, std::nullopt};
}

namespace detail {

/// Connected components of a small graph given as local adjacency lists.
inline std::vector<std::vector<std::size_t>> components(
    const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<int> comp(adj.size(), -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < adj.size(); ++s) {
    if (comp[s] >= 0) continue;
    out.emplace_back();
    std::vector<std::size_t> stack{s};
    comp[s] = static_cast<int>(out.size() - 1);
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (auto w : adj[v])
        if (comp[w] < 0) {
          comp[w] = comp[s];
          stack.push_back(w);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

inline std::string ahu_encode(const std::vector<std::vector<std::size_t>>& adj, std::size_t v,
                              std::size_t parent) {
  std::vector<std::string> kids;
  for (auto w : adj[v])
    if (w != parent) kids.push_back(ahu_encode(adj, w, v));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (auto& k : kids) s += k;
  return s + ")";
}

/// Canonical string of a tree (unrooted, via its centre), or nullopt when the
/// input is not a tree.
inline std::optional<std::string> tree_canonical_form(
    const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  if (n == 0) return std::nullopt;
  std::size_t twice_edges = 0;
  for (auto& row : adj) twice_edges += row.size();
  if (twice_edges != 2 * (n - 1) || components(adj).size() != 1) return std::nullopt;
  if (n == 1) return std::string("()");

  // Peel leaves until one or two centres remain.
  std::vector<std::size_t> deg(n);
  std::vector<std::size_t> layer;
  for (std::size_t v = 0; v < n; ++v) {
    deg[v] = adj[v].size();
    if (deg[v] <= 1) layer.push_back(v);
  }
  std::size_t remaining = n;
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<std::size_t> next;
    for (auto v : layer)
      for (auto w : adj[v])
        if (--deg[w] == 1) next.push_back(w);
    layer = std::move(next);
  }
  if (layer.size() == 1) return ahu_encode(adj, layer[0], n);
  // Two centres: root at the central edge.
  std::string a = ahu_encode(adj, layer[0], layer[1]);
  std::string b = ahu_encode(adj, layer[1], layer[0]);
  if (b < a) std::swap(a, b);
  return "E" + a + b;
}

inline std::vector<std::vector<std::size_t>> local_adjacency(const Graph& g) {
  std::vector<std::vector<std::size_t>> adj(g.n());
  for (Vertex v = 0; v < g.n(); ++v)
    for (Vertex w : g.neighbors(v)) adj[v].push_back(w);
  return adj;
}

}  // namespace detail

inline bool is_tree(const Graph& t) {
  return detail::tree_canonical_form(detail::local_adjacency(t)).has_value();
}

/// Checks that `c.vertices` induces exactly `c.claimed_edges` in g and that
/// the claimed structure has the shape its kind names.
inline bool verify_certificate(const Graph& g, const InducedCertificate& c) {
  // Local indexing of the vertex set.
  std::map<Vertex, std::size_t> index;
  for (Vertex v : c.vertices) {
    g.check(v);
    if (!index.emplace(v, index.size()).second) throw InputError("duplicate vertex in certificate");
  }
  const std::size_t k = c.vertices.size();
  std::vector<Edge> claimed;
  for (auto [u, v] : c.claimed_edges) {
    if (!index.count(u) || !index.count(v)) throw InputError("claimed edge leaves the vertex set");
    if (u == v) throw InputError("claimed self-loop");
    claimed.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(claimed.begin(), claimed.end());
  if (std::adjacent_find(claimed.begin(), claimed.end()) != claimed.end())
    throw InputError("duplicate claimed edge");

  std::vector<Edge> actual;
  for (Vertex v : c.vertices)
    for (Vertex w : g.neighbors(v))
      if (v < w && index.count(w)) actual.emplace_back(v, w);
  std::sort(actual.begin(), actual.end());
  if (actual != claimed) return false;

  std::vector<std::vector<std::size_t>> adj(k);
  for (auto [u, v] : claimed) {
    adj[index[u]].push_back(index[v]);
    adj[index[v]].push_back(index[u]);
  }
  auto max_degree = [&] {
    std::size_t m = 0;
    for (auto& row : adj) m = std::max(m, row.size());
    return m;
  };

  switch (c.kind) {
    case CertificateKind::independent_set:
      return claimed.empty();
    case CertificateKind::path:
      return k >= 1 && claimed.size() == k - 1 && max_degree() <= 2 &&
             detail::components(adj).size() == 1;
    case CertificateKind::cycle:
      return k >= 3 && claimed.size() == k && detail::components(adj).size() == 1 &&
             std::all_of(adj.begin(), adj.end(), [](auto& r) { return r.size() == 2; });
    case CertificateKind::linear_forest: {
      // Acyclic with max degree 2: every component is a path.
      auto comps = detail::components(adj);
      return max_degree() <= 2 && claimed.size() + comps.size() == k;
    }
    case CertificateKind::t_matching: {
      if (!c.pattern) throw InputError("T-matching certificate without a tree");
      auto want = detail::tree_canonical_form(detail::local_adjacency(*c.pattern));
      if (!want) throw InputError("T-matching pattern is not a tree");
      for (const auto& comp : detail::components(adj)) {
        if (comp.size() != c.pattern->n()) return false;
        std::vector<std::size_t> local(k, k);
        for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = i;
        std::vector<std::vector<std::size_t>> sub(comp.size());
        for (std::size_t i = 0; i < comp.size(); ++i)
          for (auto w : adj[comp[i]]) sub[i].push_back(local[w]);
        if (detail::tree_canonical_form(sub) != want) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace holelab
