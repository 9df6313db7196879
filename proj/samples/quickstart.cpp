// Exact oracle on a small sample, then the forest-then-connect pipeline on a
// larger one.

#include <cstdio>

#include "holelab/bounds.hpp"
#include "holelab/connector.hpp"
#include "holelab/exposure.hpp"
#include "holelab/oracle.hpp"

int main() {
  using namespace holelab;

  const Graph small = sample_gnp(16, 3.0 / 16, RngSeed{1, 0});
  const auto path = max_induced_path(small);
  std::printf("G(16, 3/16): %zu edges, longest induced path has %zu vertices:", small.edge_count(), path.optimum);
  for (Vertex v : path.witness.vertices) std::printf(" %u", v);
  std::printf("\n");

  for (bool cycle : {false, true}) {
    const auto rep = run_pipeline({.n = 20000, .d = 30, .epsilon = 0.1, .cycle = cycle, .seed = 1});
    std::printf("pipeline n=20000 d=30 %s: order %zu via %s, %zu forest components, verified %s\n",
                cycle ? "cycle" : "path", rep.order, rep.source.c_str(), rep.forest.components,
                rep.verified ? "yes" : "no");
  }

  auto in = bounds::BoundInput::from_degree(20000, 30, 0.1);
  const auto tl = bounds::target_lengths(in);
  std::printf("two log_q(np) = %.2f, (2 +- eps)(n/d) log d = [%.0f, %.0f]\n", tl.two_log_q, tl.target_lower,
              tl.target_upper);
}
