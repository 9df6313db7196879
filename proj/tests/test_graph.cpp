#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "holelab/certificate.hpp"
#include "holelab/edge_list.hpp"
#include "holelab/graph.hpp"
#include "holelab/rng.hpp"
#include "support.hpp"

using namespace holelab;
using holelab::testing::complete_graph;
using holelab::testing::cycle_graph;
using holelab::testing::path_graph;
using holelab::testing::random_graph;

TEST(Graph, BuildNormalisesAndDeduplicates) {
  auto g = Graph::from_edges(4, {{1, 0}, {0, 1}, {2, 3}});
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_FALSE(g.has_edge(0, 2));
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {2, 3}}));
}

TEST(Graph, RejectsSelfLoopsAndRange) {
  EXPECT_THROW(Graph::from_edges(3, {{1, 1}}), InputError);
  EXPECT_THROW(Graph::from_edges(3, {{0, 3}}), InputError);
}

TEST(Graph, SymmetricNoLoopsDegreeMatchesRow) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = random_graph(30, 0.2, seed);
    std::size_t twice = 0;
    for (Vertex v = 0; v < g.n(); ++v) {
      EXPECT_FALSE(g.has_edge(v, v));
      EXPECT_EQ(g.degree(v), g.neighbors(v).size());
      EXPECT_TRUE(std::is_sorted(g.neighbors(v).begin(), g.neighbors(v).end()));
      for (Vertex w : g.neighbors(v)) EXPECT_TRUE(g.has_edge(w, v));
      twice += g.degree(v);
    }
    EXPECT_EQ(twice, 2 * g.edge_count());
  }
}

TEST(InducedPath, Examples) {
  const Graph empty5(5);
  EXPECT_TRUE(is_induced_path(empty5, std::vector<Vertex>{2}));
  EXPECT_FALSE(is_induced_path(complete_graph(3), std::vector<Vertex>{0, 1, 2}));
  EXPECT_TRUE(is_induced_path(path_graph(4, 1), std::vector<Vertex>{0, 1, 2, 3}));
}

TEST(InducedPath, RejectsNonAdjacentAndRepeats) {
  auto g = path_graph(4);
  EXPECT_FALSE(is_induced_path(g, std::vector<Vertex>{0, 2}));
  EXPECT_FALSE(is_induced_path(g, std::vector<Vertex>{0, 1, 0}));
  EXPECT_THROW(is_induced_path(g, std::vector<Vertex>{0, 9}), InputError);
}

TEST(InducedPath, ReversalInvariant) {
  Rng rng(RngSeed{7, 0});
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto g = random_graph(8, 0.4, seed);
    VertexPath p;
    for (Vertex v = 0; v < 8; ++v)
      if (rng.bernoulli(0.5)) p.push_back(v);
    rng.shuffle(p);
    if (p.empty()) continue;
    VertexPath r(p.rbegin(), p.rend());
    EXPECT_EQ(is_induced_path(g, p), is_induced_path(g, r));
  }
}

TEST(InducedCycle, Examples) {
  EXPECT_TRUE(is_induced_cycle(complete_graph(3), std::vector<Vertex>{0, 1, 2}));
  auto chorded = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  EXPECT_FALSE(is_induced_cycle(chorded, std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_TRUE(is_induced_cycle(cycle_graph(5), std::vector<Vertex>{0, 1, 2, 3, 4}));
  EXPECT_THROW(is_induced_cycle(cycle_graph(5), std::vector<Vertex>{0, 1}), InputError);
}

TEST(IndependentSet, Examples) {
  EXPECT_TRUE(is_independent_set(path_graph(3), std::vector<Vertex>{}));
  EXPECT_FALSE(is_independent_set(Graph::from_edges(2, {{0, 1}}), std::vector<Vertex>{0, 1}));
  auto k22 = Graph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  EXPECT_TRUE(is_independent_set(k22, std::vector<Vertex>{0, 1}));
  EXPECT_THROW(is_independent_set(k22, std::vector<Vertex>{7}), InputError);
}

TEST(Certificate, IndependentSetMatchesEdgeEnumeration) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = random_graph(8, 0.3, seed);
    for (std::uint32_t mask = 0; mask < 256; ++mask) {
      std::vector<Vertex> s;
      for (Vertex v = 0; v < 8; ++v)
        if (mask >> v & 1u) s.push_back(v);
      bool no_edge = true;
      for (auto [u, v] : g.edges())
        if ((mask >> u & 1u) && (mask >> v & 1u)) no_edge = false;
      EXPECT_EQ(verify_certificate(g, independent_set_certificate(s)), no_edge);
    }
  }
}

TEST(Certificate, LinearForestExamples) {
  auto two_edges = Graph::from_edges(4, {{0, 1}, {2, 3}});
  EXPECT_TRUE(verify_certificate(two_edges, linear_forest_certificate({{0, 1}, {2, 3}})));
  auto crossed = Graph::from_edges(4, {{0, 1}, {2, 3}, {1, 2}});
  EXPECT_FALSE(verify_certificate(crossed, linear_forest_certificate({{0, 1}, {2, 3}})));
}

TEST(Certificate, TMatchingExamples) {
  auto k2 = path_graph(2);
  auto three = Graph::from_edges(6, {{0, 1}, {2, 3}, {4, 5}});
  EXPECT_TRUE(verify_certificate(three, t_matching_certificate(three, {{0, 1}, {2, 3}, {4, 5}}, k2)));
  // In C6 the three alternate edges are joined by the other three.
  auto c6 = cycle_graph(6);
  EXPECT_FALSE(verify_certificate(c6, t_matching_certificate(c6, {{0, 1}, {2, 3}, {4, 5}}, k2)));
  // Components must be isomorphic to T, not just trees of the same order.
  auto star = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  auto p4 = path_graph(4);
  EXPECT_FALSE(verify_certificate(p4, t_matching_certificate(p4, {{0, 1, 2, 3}}, star)));
  EXPECT_TRUE(verify_certificate(star, t_matching_certificate(star, {{0, 1, 2, 3}}, star)));
}

TEST(Certificate, PathAndCycleKinds) {
  auto c5 = cycle_graph(5);
  EXPECT_TRUE(verify_certificate(c5, cycle_certificate({0, 1, 2, 3, 4})));
  EXPECT_TRUE(verify_certificate(c5, path_certificate({0, 1, 2, 3})));
  EXPECT_FALSE(verify_certificate(c5, path_certificate({0, 1, 2, 3, 4})));
}

TEST(Certificate, MalformedIsInputError) {
  auto g = path_graph(4);
  EXPECT_THROW(verify_certificate(g, path_certificate({0, 1, 0})), InputError);
  InducedCertificate bad{CertificateKind::path, {0, 1}, {{0, 3}}, std::nullopt};
  EXPECT_THROW(verify_certificate(g, bad), InputError);
  InducedCertificate dup{CertificateKind::path, {0, 1}, {{0, 1}, {1, 0}}, std::nullopt};
  EXPECT_THROW(verify_certificate(g, dup), InputError);
  InducedCertificate no_tree{CertificateKind::t_matching, {0, 1}, {{0, 1}}, std::nullopt};
  EXPECT_THROW(verify_certificate(g, no_tree), InputError);
  InducedCertificate cyclic_t{CertificateKind::t_matching, {0, 1}, {{0, 1}}, cycle_graph(3)};
  EXPECT_THROW(verify_certificate(g, cyclic_t), InputError);
  EXPECT_THROW(verify_certificate(g, path_certificate({0, 8})), InputError);
}

// A certificate only looks at pairs inside its vertex set.
TEST(Certificate, Locality) {
  Rng rng(RngSeed{11, 0});
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g = random_graph(10, 0.35, seed);
    VertexPath p{0};
    while (p.size() < 5) {
      Vertex head = p.back(), next = 10;
      for (Vertex w : g.neighbors(head))
        if (std::find(p.begin(), p.end(), w) == p.end()) {
          next = w;
          break;
        }
      if (next == 10) break;
      p.push_back(next);
    }
    const auto cert = path_certificate(p);
    const bool before = verify_certificate(g, cert);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < 10; ++u)
      for (Vertex v = u + 1; v < 10; ++v) {
        const bool inside = std::count(p.begin(), p.end(), u) && std::count(p.begin(), p.end(), v);
        if (inside ? g.has_edge(u, v) : rng.bernoulli(0.5)) edges.emplace_back(u, v);
      }
    EXPECT_EQ(verify_certificate(Graph::from_edges(10, edges), cert), before);
  }
}

TEST(TreeCanonicalForm, DistinguishesShapes) {
  using detail::local_adjacency;
  using detail::tree_canonical_form;
  auto p4a = path_graph(4);
  auto p4b = Graph::from_edges(4, {{2, 0}, {0, 3}, {3, 1}});
  auto star = Graph::from_edges(4, {{1, 0}, {1, 2}, {1, 3}});
  EXPECT_EQ(tree_canonical_form(local_adjacency(p4a)), tree_canonical_form(local_adjacency(p4b)));
  EXPECT_NE(tree_canonical_form(local_adjacency(p4a)), tree_canonical_form(local_adjacency(star)));
  EXPECT_FALSE(tree_canonical_form(local_adjacency(cycle_graph(4))).has_value());
  EXPECT_TRUE(is_tree(Graph(1)));
  EXPECT_FALSE(is_tree(Graph(2)));
}

TEST(EdgeList, RoundTrip) {
  auto g = random_graph(25, 0.2, 3);
  EXPECT_EQ(parse_edge_list(format_edge_list(g)), g);
}

TEST(EdgeList, Malformed) {
  EXPECT_THROW(parse_edge_list(""), InputError);
  EXPECT_THROW(parse_edge_list("3 1\n1 0\n"), InputError);
  EXPECT_THROW(parse_edge_list("3 1\n0 3\n"), InputError);
  EXPECT_THROW(parse_edge_list("3 2\n0 1\n"), InputError);
  EXPECT_THROW(parse_edge_list("3 2\n0 1\n0 1\n"), InputError);
  EXPECT_THROW(parse_edge_list("3 1\n0 1\n1 2\n"), InputError);
  EXPECT_EQ(parse_edge_list("3 1\n0 2\n").edge_count(), 1u);
}

TEST(VertexSet, Basics) {
  VertexSet s(100, {3, 64, 99});
  EXPECT_EQ(s.count(), 3u);
  EXPECT_EQ(s.first(), 3u);
  EXPECT_EQ(s.complement().count(), 97u);
  EXPECT_EQ((s & VertexSet::range(100, 60, 99)).members(), (std::vector<Vertex>{64, 99}));
  EXPECT_THROW(s.insert(100), InputError);
  EXPECT_EQ(VertexSet(5).first(), 5u);
  EXPECT_TRUE((VertexSet::all(70) - VertexSet::all(70)).empty());
}
