#pragma once

#include <cmath>
#include <vector>

#include "holelab/connector.hpp"
#include "holelab/exposure.hpp"
#include "holelab/graph.hpp"

namespace holelab::testing {

inline Graph path_graph(std::size_t n, std::size_t extra_isolated = 0) {
  std::vector<Edge> e;
  for (Vertex v = 1; v < n; ++v) e.emplace_back(v - 1, v);
  return Graph::from_edges(n + extra_isolated, e);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v < n; ++v) e.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return Graph::from_edges(n, e);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

inline Graph random_graph(std::size_t n, double p, std::uint64_t seed, std::uint64_t stream = 0) {
  return sample_gnp(n, p, RngSeed{seed, stream});
}

/// |x - mean| within k standard errors.
inline bool within_sigmas(double x, double mean, double sigma, double k = 3.0) {
  return std::fabs(x - mean) <= k * sigma;
}

/// Maximum induced path order by depth-first search over vertex sequences,
/// keeping only prefixes that are induced paths.
inline std::size_t naive_max_path(const Graph& g) {
  std::size_t best = 0;
  VertexPath seq;
  std::vector<bool> used(g.n(), false);
  auto go = [&](auto&& self) -> void {
    best = std::max(best, seq.size());
    for (Vertex v = 0; v < g.n(); ++v) {
      if (used[v]) continue;
      seq.push_back(v);
      if (is_induced_path(g, seq)) {
        used[v] = true;
        self(self);
        used[v] = false;
      }
      seq.pop_back();
    }
  };
  go(go);
  return best;
}

/// Components 0..N-1 of order L laid out on consecutive ids, one reservoir
/// vertex a = N L. The forest's own pairs are fixed (path edges in g1, no
/// g2); everything else is left for build_aux_digraph to reveal.
struct ConnectorFixture {
  StagedSample sample;
  PipelineState state;
};

inline ConnectorFixture connector_fixture(std::size_t N, std::size_t L, double epsilon, double p2,
                                          std::uint64_t seed) {
  const std::size_t n = N * L + 1;
  ConnectorFixture fx{StagedSample(n, p2, p2, seed), {}};
  LinearForest forest{L, zone_size(L, epsilon), {}};
  std::vector<Edge> path_edges;
  for (std::size_t c = 0; c < N; ++c) {
    VertexPath comp;
    for (std::size_t i = 0; i < L; ++i) comp.push_back(static_cast<Vertex>(c * L + i));
    for (std::size_t i = 1; i < L; ++i) path_edges.emplace_back(comp[i - 1], comp[i]);
    forest.components.push_back(std::move(comp));
  }
  const auto fv = forest.vertex_set(n);
  fx.sample.reveal_fixed(fv, fv, Layer::both, path_edges, {});
  fx.state.independent = VertexSet(n, {static_cast<Vertex>(N * L)});
  set_forest(fx.state, std::move(forest), epsilon);
  return fx;
}

}  // namespace holelab::testing
