#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "holelab/exposure.hpp"
#include "support.hpp"

using namespace holelab;
using holelab::testing::within_sigmas;

TEST(SplitProbability, Examples) {
  EXPECT_DOUBLE_EQ(split_probability(0.5, 0.0), 0.5);
  EXPECT_DOUBLE_EQ(split_probability(0.5, 0.5), 0.0);
  const double n = 1e5, d = 100, p = d / n, p2 = d / (n * std::log(d));
  const double p1 = split_probability(p, p2);
  EXPECT_LE(p1, p);
  EXPECT_GE(p1, 0.0);
  EXPECT_NEAR(1.0 - (1.0 - p) / (1.0 - p2), p1, 1e-15);
  EXPECT_LE(std::fabs((1 - p1) * (1 - p2) - (1 - p)), 1e-15);
}

TEST(SplitProbability, IdentityHoldsAcrossRange) {
  Rng rng(RngSeed{1, 0});
  for (int i = 0; i < 1000; ++i) {
    const double p = rng.uniform() * 0.999, p2 = rng.uniform() * p;
    const double p1 = split_probability(p, p2);
    EXPECT_GE(p1, 0.0);
    EXPECT_LE(p1, p);
    EXPECT_LE(std::fabs((1 - p1) * (1 - p2) - (1 - p)), 1e-12 * (1 - p));
  }
}

TEST(SplitProbability, Errors) {
  EXPECT_THROW(split_probability(0.3, 0.4), InputError);
  EXPECT_THROW(split_probability(1.0, 0.1), InputError);
  EXPECT_THROW(split_probability(0.5, -0.1), InputError);
}

TEST(Exposure, ProbabilityOneGivesTriangle) {
  StagedSample s(3, 1.0 - 1e-15, 0.0);
  ASSERT_GE(s.p1(), 1.0 - 1e-14);
  const VertexSet a(3, {0, 1, 2});
  s.expose(a, a, Layer::g1, RngSeed{4, 0});
  EXPECT_EQ(s.layer_graph(Layer::g1).edge_count(), 3u);
}

TEST(Exposure, ZeroLayerStaysEmpty) {
  StagedSample s(50, 0.2, 0.0);
  const auto all = VertexSet::all(50);
  s.expose(all, all, Layer::g2, RngSeed{9, 0});
  EXPECT_TRUE(s.edges(Layer::g2).empty());
}

TEST(Exposure, OverlapRejectedAndSkipMode) {
  StagedSample s(10, 0.3, 0.1, 5);
  const auto lo = VertexSet::range(10, 0, 4), all = VertexSet::all(10);
  s.expose(lo, lo, Layer::both);
  EXPECT_THROW(s.expose(all, all, Layer::g1), ExposureOrderError);
  EXPECT_THROW(s.expose(VertexSet(10, {0}), VertexSet(10, {1}), Layer::g2), ExposureOrderError);
  // A single shared vertex is not a pair.
  EXPECT_NO_THROW(s.expose(VertexSet(10, {0}), VertexSet::range(10, 5, 9), Layer::g1));
  const auto before = s.edges(Layer::g1);
  s.expose(all, all, Layer::both, OnOverlap::skip_revealed);
  for (auto e : s.edges(Layer::g1)) {
    const bool old_pair = (e.first < 5 && e.second < 5) || (e.first == 0 && e.second >= 5);
    if (old_pair) {
      EXPECT_TRUE(std::count(before.begin(), before.end(), e)) << e.first << " " << e.second;
    }
  }
  const auto g1 = s.edges(Layer::g1);
  EXPECT_EQ(std::set<Edge>(g1.begin(), g1.end()).size(), g1.size());
}

// Every pair class (A, B) over subsets of a 4-vertex universe: the overlap
// test and the rejection agree with brute-force pair intersection.
TEST(Exposure, SoundnessExhaustive) {
  const std::size_t n = 4;
  auto pairs_of = [&](std::uint32_t a, std::uint32_t b) {
    std::set<Edge> out;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v)
        if (u != v && (a >> u & 1u) && (b >> v & 1u)) out.emplace(std::min(u, v), std::max(u, v));
    return out;
  };
  auto set_of = [&](std::uint32_t m) {
    VertexSet s(n);
    for (Vertex v = 0; v < n; ++v)
      if (m >> v & 1u) s.insert(v);
    return s;
  };
  for (std::uint32_t a = 1; a < 16; ++a)
    for (std::uint32_t b = a; b < 16; ++b) {
      const auto first = pairs_of(a, b);
      for (std::uint32_t c = 1; c < 16; ++c)
        for (std::uint32_t d = 1; d < 16; ++d) {
          const auto second = pairs_of(c, d);
          bool shared = false;
          for (auto e : second) shared |= first.count(e) > 0;
          for (Layer l1 : {Layer::g1, Layer::g2, Layer::both})
            for (Layer l2 : {Layer::g1, Layer::both}) {
              StagedSample s(n, 0.5, 0.25);
              s.expose(set_of(a), set_of(b), l1, RngSeed{a, b});
              const bool layer_clash = has_layer(l1, Layer::g1) || l2 == Layer::both;
              const bool expect = shared && layer_clash;
              ASSERT_EQ(s.overlaps(set_of(c), set_of(d), l2), expect) << a << b << c << d;
              if (expect) {
                ASSERT_THROW(s.expose(set_of(c), set_of(d), l2, RngSeed{c, d}), ExposureOrderError);
              } else {
                ASSERT_NO_THROW(s.expose(set_of(c), set_of(d), l2, RngSeed{c, d}));
              }
            }
        }
    }
}

TEST(Exposure, RevealedPredicate) {
  StagedSample s(6, 0.3, 0.1);
  s.expose(VertexSet(6, {0, 1}), VertexSet(6, {2, 3}), Layer::g2);
  EXPECT_TRUE(s.revealed(0, 3, Layer::g2));
  EXPECT_TRUE(s.revealed(3, 0, Layer::g2));
  EXPECT_FALSE(s.revealed(0, 3, Layer::g1));
  EXPECT_FALSE(s.revealed(0, 1, Layer::g2));
}

TEST(Exposure, Determinism) {
  auto build = [](std::uint64_t seed) {
    StagedSample s(300, 0.05, 0.01, seed);
    const auto lo = VertexSet::range(300, 0, 99), all = VertexSet::all(300);
    s.expose(lo, lo, Layer::both);
    s.expose(all, all, Layer::both, OnOverlap::skip_revealed);
    return std::make_pair(s.edges(Layer::g1), s.edges(Layer::g2));
  };
  EXPECT_EQ(build(3), build(3));
  EXPECT_NE(build(3), build(4));
}

TEST(Exposure, StreamsAreIndependentOfRoundOrder) {
  // Re-running one round with its own stream reproduces it, whatever came before.
  const auto a = VertexSet::range(200, 0, 99), b = VertexSet::range(200, 100, 199);
  StagedSample s1(200, 0.1, 0.02, 1), s2(200, 0.1, 0.02, 1);
  s1.expose(a, b, Layer::g1, RngSeed{1, 42});
  s2.expose(a, a, Layer::g1, RngSeed{1, 7});
  s2.expose(a, b, Layer::g1, RngSeed{1, 42});
  std::vector<Edge> cross;
  for (auto e : s2.edges(Layer::g1))
    if (e.first < 100 && e.second >= 100) cross.push_back(e);
  EXPECT_EQ(s1.edges(Layer::g1), cross);
}

TEST(Exposure, UnionExamples) {
  auto s = StagedSample::fully_exposed(3, 0.5, 0.5, {{0, 1}}, {{1, 2}});
  EXPECT_EQ(union_graph(s).edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
  auto t = StagedSample::fully_exposed(3, 0.5, 0.0, {{0, 1}, {0, 2}}, {});
  EXPECT_EQ(union_graph(t), t.layer_graph(Layer::g1));
}

TEST(Exposure, UnionDensityBothLayers) {
  const std::size_t n = 2000, seeds = 50;
  const double p = 0.05, pairs = n * (n - 1) / 2.0;
  double edges = 0;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    StagedSample s(n, p, 0.005, seed);
    const auto all = VertexSet::all(n);
    s.expose(all, all, Layer::both);
    edges += static_cast<double>(s.union_graph().edge_count());
  }
  const double density = edges / (pairs * seeds);
  EXPECT_TRUE(within_sigmas(density, p, std::sqrt(p * (1 - p) / (pairs * seeds)))) << density;
}

TEST(Exposure, UnionMarginalAndLayerIndependence) {
  const std::size_t n = 500, seeds = 200;
  const double pairs = n * (n - 1) / 2.0, total = pairs * seeds;
  double a = 0, b = 0, both = 0, uni = 0;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    StagedSample s(n, 0.75, 0.5, seed);
    ASSERT_NEAR(s.p1(), 0.5, 1e-15);
    const auto all = VertexSet::all(n);
    s.expose(all, all, Layer::both);
    auto e1 = s.edges(Layer::g1), e2 = s.edges(Layer::g2);
    std::sort(e1.begin(), e1.end());
    std::sort(e2.begin(), e2.end());
    std::vector<Edge> common;
    std::set_intersection(e1.begin(), e1.end(), e2.begin(), e2.end(), std::back_inserter(common));
    both += static_cast<double>(common.size());
    a += static_cast<double>(e1.size());
    b += static_cast<double>(s.edges(Layer::g2).size());
    uni += static_cast<double>(s.union_graph().edge_count());
  }
  const double pu = uni / total;
  EXPECT_TRUE(within_sigmas(pu, 0.75, std::sqrt(0.75 * 0.25 / total))) << pu;
  const double pa = a / total, pb = b / total, pab = both / total;
  const double corr = (pab - pa * pb) / std::sqrt(pa * (1 - pa) * pb * (1 - pb));
  EXPECT_TRUE(within_sigmas(corr, 0.0, 1.0 / std::sqrt(total))) << corr;
}

TEST(Exposure, SparseSkipSamplerMarginal) {
  const std::size_t n = 3000, seeds = 50;
  const double p = 0.004, pairs = n * (n - 1) / 2.0;
  double edges = 0;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) edges += static_cast<double>(sample_gnp(n, p, {seed, 0}).edge_count());
  EXPECT_TRUE(within_sigmas(edges / (pairs * seeds), p, std::sqrt(p * (1 - p) / (pairs * seeds))));
}

TEST(Exposure, RectangularClassPairsOnce) {
  // A and B overlap on {2, 3}: pairs inside the overlap must not be drawn twice.
  const std::size_t n = 6, seeds = 40000;
  const VertexSet a(n, {0, 1, 2, 3}), b(n, {2, 3, 4, 5});
  double inside = 0;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    StagedSample s(n, 0.3, 0.0, seed);
    s.expose(a, b, Layer::g1);
    for (auto e : s.edges(Layer::g1)) {
      ASSERT_TRUE((a.contains(e.first) && b.contains(e.second)) || (a.contains(e.second) && b.contains(e.first)));
      inside += e == Edge{2, 3};
    }
  }
  EXPECT_TRUE(within_sigmas(inside / seeds, 0.3, std::sqrt(0.3 * 0.7 / seeds)));
}

TEST(Exposure, RevealFixed) {
  StagedSample s(5, 0.2, 0.1);
  const auto lo = VertexSet::range(5, 0, 2);
  s.reveal_fixed(lo, lo, Layer::both, {{0, 1}}, {{1, 2}});
  EXPECT_EQ(s.edges(Layer::g1), (std::vector<Edge>{{0, 1}}));
  EXPECT_THROW(s.reveal_fixed(lo, lo, Layer::g1, {}, {}), ExposureOrderError);
  StagedSample t(5, 0.2, 0.1);
  EXPECT_THROW(t.reveal_fixed(lo, lo, Layer::g1, {{0, 4}}, {}), InputError);
  EXPECT_THROW(t.reveal_fixed(lo, lo, Layer::g1, {}, {{0, 1}}), InputError);
}

TEST(Exposure, SampleGnpComplete) {
  EXPECT_EQ(sample_gnp(6, 1.0, {0, 0}).edge_count(), 15u);
  EXPECT_EQ(sample_gnp(6, 0.0, {0, 0}).edge_count(), 0u);
}

TEST(RoundScript, Parses) {
  const auto dir = std::filesystem::temp_directory_path() / "holelab_round_script";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "v.txt") << "1 3\n5\n";
  std::istringstream in(
      "# comment\n"
      "expose range:0..4 range:0..4 both\n"
      "\n"
      "expose set:v.txt all g1-only  # trailing\n"
      "expose all all g2\n");
  const auto rounds = parse_round_script(in, 10, dir);
  ASSERT_EQ(rounds.size(), 3u);
  EXPECT_EQ(rounds[0].a.count(), 5u);
  EXPECT_EQ(rounds[1].a.members(), (std::vector<Vertex>{1, 3, 5}));
  EXPECT_EQ(rounds[1].layers, Layer::g1);
  EXPECT_EQ(rounds[2].layers, Layer::g2);
}

TEST(RoundScript, Errors) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_round_script(in, 10);
  };
  EXPECT_THROW(parse("reveal all all both\n"), InputError);
  EXPECT_THROW(parse("expose all all\n"), InputError);
  EXPECT_THROW(parse("expose all all both extra\n"), InputError);
  EXPECT_THROW(parse("expose range:0..12 all both\n"), InputError);
  EXPECT_THROW(parse("expose nothing all both\n"), InputError);
  EXPECT_THROW(parse("expose all all g3\n"), InputError);
  EXPECT_THROW(parse("expose set:/nonexistent/file all g1\n"), InputError);
}

TEST(Rng, GeometricAndBelow) {
  Rng rng(RngSeed{2, 3});
  double sum = 0;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) sum += static_cast<double>(rng.geometric(0.1));
  // Mean (1 - p) / p = 9, variance (1 - p) / p^2 = 90.
  EXPECT_TRUE(within_sigmas(sum / draws, 9.0, std::sqrt(90.0 / draws)));
  for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.below(7), 7u);
  EXPECT_NE((RngSeed{1, 2}.key()), (RngSeed{2, 1}.key()));
  EXPECT_NE((RngSeed{1, 2}.child(1).key()), (RngSeed{1, 2}.child(2).key()));
}
