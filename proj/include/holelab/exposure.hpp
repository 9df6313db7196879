#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "holelab/errors.hpp"
#include "holelab/graph.hpp"
#include "holelab/rng.hpp"
#include "holelab/vertex_set.hpp"

namespace holelab {

enum class Layer : std::uint8_t { g1 = 1, g2 = 2, both = 3 };

inline bool has_layer(Layer set, Layer single) {
  return (static_cast<std::uint8_t>(set) & static_cast<std::uint8_t>(single)) != 0;
}

inline const char* to_string(Layer l) {
  switch (l) {
    case Layer::g1: return "g1";
    case Layer::g2: return "g2";
    case Layer::both: return "both";
  }
  return "?";
}

/// What `expose` does when the requested pairs were already sampled.
enum class OnOverlap {
  reject,         ///< throw ExposureOrderError
  skip_revealed,  ///< sample only the pairs not yet revealed in that layer
};

/// Returns p1 with (1 - p) = (1 - p1)(1 - p2).
inline double split_probability(double p, double p2) {
  if (!(p >= 0.0) || !(p < 1.0)) throw InputError("split_probability: need 0 <= p < 1");
  if (!(p2 >= 0.0)) throw InputError("split_probability: need p2 >= 0");
  if (p2 > p) throw InputError("split_probability: p2 exceeds p");
  // 1 - (1-p)/(1-p2) == (p - p2)/(1 - p2), the latter without cancellation.
  double p1 = (p - p2) / (1.0 - p2);
  if (p1 < 0.0) p1 = 0.0;
  if (p1 > p) p1 = p;
  return p1;
}

/// One exposure round: every pair {u, v}, u in A, v in B, u != v, in `layers`.
struct PairClass {
  VertexSet a;
  VertexSet b;
  Layer layers;

  bool covers(Vertex u, Vertex v) const {
    return u != v && ((a.contains(u) && b.contains(v)) || (a.contains(v) && b.contains(u)));
  }
};

namespace detail {

/// Some u in x and v in y with u != v.
inline bool has_offdiagonal_pair(const VertexSet& x, const VertexSet& y) {
  const auto cx = x.count(), cy = y.count();
  if (cx == 0 || cy == 0) return false;
  return !(cx == 1 && cy == 1 && x.first() == y.first());
}

/// Whether the unordered pair sets of (a, b) and (c, d) intersect.
inline bool pair_classes_overlap(const VertexSet& a, const VertexSet& b, const VertexSet& c,
                                 const VertexSet& d) {
  return has_offdiagonal_pair(a & c, b & d) || has_offdiagonal_pair(a & d, b & c);
}

}  // namespace detail

/// G(n, p) as the union of independent layers G1 ~ G(n, p1), G2 ~ G(n, p2),
/// revealed in rounds over explicit pair classes.
class StagedSample {
public:
  StagedSample(std::size_t n, double p, double p2, std::uint64_t master_seed = 0)
      : n_(n), p_(p), p1_(split_probability(p, p2)), p2_(p2), master_seed_(master_seed) {}

  /// A sample whose layers are given explicitly and whose every pair counts
  /// as revealed. Test fixtures and hand-built instances.
  static StagedSample fully_exposed(std::size_t n, double p1, double p2, std::vector<Edge> g1,
                                    std::vector<Edge> g2) {
    detail::require(p1 >= 0 && p1 <= 1 && p2 >= 0 && p2 <= 1, "layer probabilities out of range");
    StagedSample s;
    s.n_ = n;
    s.p1_ = p1;
    s.p2_ = p2;
    s.p_ = 1.0 - (1.0 - p1) * (1.0 - p2);
    s.g1_ = Graph::from_edges(n, std::move(g1)).edges();
    s.g2_ = Graph::from_edges(n, std::move(g2)).edges();
    s.classes_.push_back({VertexSet::all(n), VertexSet::all(n), Layer::both});
    return s;
  }

  std::size_t n() const noexcept { return n_; }
  double p() const noexcept { return p_; }
  double p1() const noexcept { return p1_; }
  double p2() const noexcept { return p2_; }
  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::size_t rounds() const noexcept { return classes_.size(); }
  const std::vector<PairClass>& classes() const noexcept { return classes_; }

  const std::vector<Edge>& edges(Layer single) const {
    detail::require(single != Layer::both, "edges(): ask for one layer");
    return single == Layer::g1 ? g1_ : g2_;
  }

  bool revealed(Vertex u, Vertex v, Layer single) const {
    for (const auto& c : classes_)
      if (has_layer(c.layers, single) && c.covers(u, v)) return true;
    return false;
  }

  /// Whether exposing (a, b) in `layers` would touch an already revealed pair.
  bool overlaps(const VertexSet& a, const VertexSet& b, Layer layers) const {
    for (const auto& c : classes_)
      if ((static_cast<std::uint8_t>(c.layers) & static_cast<std::uint8_t>(layers)) &&
          detail::pair_classes_overlap(a, b, c.a, c.b))
        return true;
    return false;
  }

  /// Samples the pairs of (a, b) in the requested layers from the stream
  /// `seed`; each layer draws from its own child stream.
  void expose(const VertexSet& a, const VertexSet& b, Layer layers, RngSeed seed,
              OnOverlap mode = OnOverlap::reject) {
    detail::require(a.universe() == n_ && b.universe() == n_, "vertex set universe mismatch");
    if (mode == OnOverlap::reject && overlaps(a, b, layers))
      throw ExposureOrderError("exposure would re-sample already revealed pairs");
    const auto as = a.members();
    const auto bs = b.members();
    for (Layer single : {Layer::g1, Layer::g2}) {
      if (!has_layer(layers, single)) continue;
      const double q = single == Layer::g1 ? p1_ : p2_;
      auto& out = single == Layer::g1 ? g1_ : g2_;
      Rng rng(seed.child(static_cast<std::uint64_t>(single)));
      const bool check_revealed = mode == OnOverlap::skip_revealed;
      sample_slots(as, bs, a, b, q, rng, [&](Vertex u, Vertex v) {
        if (check_revealed && revealed(u, v, single)) return;
        out.emplace_back(std::min(u, v), std::max(u, v));
      });
    }
    classes_.push_back({a, b, layers});
  }

  /// Records (a, b) in `layers` as revealed with prescribed outcomes instead
  /// of sampling. Every given edge must lie in the class and in a requested
  /// layer.
  void reveal_fixed(const VertexSet& a, const VertexSet& b, Layer layers, std::vector<Edge> g1,
                    std::vector<Edge> g2) {
    detail::require(a.universe() == n_ && b.universe() == n_, "vertex set universe mismatch");
    if (overlaps(a, b, layers))
      throw ExposureOrderError("fixed reveal would cover already revealed pairs");
    const PairClass cls{a, b, layers};
    for (Layer single : {Layer::g1, Layer::g2}) {
      auto& given = single == Layer::g1 ? g1 : g2;
      detail::require(given.empty() || has_layer(layers, single), "edge given for an unrequested layer");
      auto& out = single == Layer::g1 ? g1_ : g2_;
      for (auto [u, v] : Graph::from_edges(n_, std::move(given)).edges()) {
        detail::require(cls.covers(u, v), "fixed edge outside the pair class");
        out.emplace_back(u, v);
      }
    }
    classes_.push_back(cls);
  }

  /// Same as expose, keyed by (master seed, round index).
  void expose(const VertexSet& a, const VertexSet& b, Layer layers,
              OnOverlap mode = OnOverlap::reject) {
    expose(a, b, layers, RngSeed{master_seed_, classes_.size()}, mode);
  }

  Graph layer_graph(Layer single) const { return Graph::from_edges(n_, edges(single)); }

  Graph union_graph() const {
    std::vector<Edge> all = g1_;
    all.insert(all.end(), g2_.begin(), g2_.end());
    return Graph::from_edges(n_, std::move(all));
  }

  /// Geometric skipping below this probability, one Bernoulli per pair above.
  static constexpr double sparse_threshold = 0.01;

private:
  StagedSample() = default;

  // Walks the ordered slots A x B. Each unordered pair is visited once: on the
  // diagonal never, and when it is reachable both ways only as (min, max).
  template <class Emit>
  static void sample_slots(const std::vector<Vertex>& as, const std::vector<Vertex>& bs,
                           const VertexSet& a, const VertexSet& b, double q, Rng& rng,
                           Emit&& emit) {
    if (q <= 0.0 || as.empty() || bs.empty()) return;
    auto canonical = [&](Vertex u, Vertex v) {
      if (u == v) return false;
      return !(b.contains(u) && a.contains(v)) || u < v;
    };
    const std::uint64_t width = bs.size();
    const std::uint64_t slots = static_cast<std::uint64_t>(as.size()) * width;
    if (q < sparse_threshold) {
      std::uint64_t i = rng.geometric(q);
      while (i < slots) {
        Vertex u = as[i / width], v = bs[i % width];
        if (canonical(u, v)) emit(u, v);
        const std::uint64_t step = rng.geometric(q);
        if (step >= slots - i) break;
        i += step + 1;
      }
    } else {
      for (Vertex u : as)
        for (Vertex v : bs)
          if (canonical(u, v) && rng.bernoulli(q)) emit(u, v);
    }
  }

  std::size_t n_ = 0;
  double p_ = 0, p1_ = 0, p2_ = 0;
  std::uint64_t master_seed_ = 0;
  std::vector<PairClass> classes_;
  std::vector<Edge> g1_, g2_;
};

/// Value-semantics form of StagedSample::expose.
inline StagedSample expose_pairs(StagedSample s, const VertexSet& a, const VertexSet& b,
                                 Layer layers, RngSeed seed, OnOverlap mode = OnOverlap::reject) {
  s.expose(a, b, layers, seed, mode);
  return s;
}

inline Graph union_graph(const StagedSample& s) { return s.union_graph(); }

/// A plain G(n, p) sample.
inline Graph sample_gnp(std::size_t n, double p, RngSeed seed) {
  detail::require(p >= 0.0 && p <= 1.0, "sample_gnp: p out of range");
  if (p >= 1.0) {
    std::vector<Edge> all;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) all.emplace_back(u, v);
    return Graph::from_edges(n, std::move(all));
  }
  StagedSample s(n, p, 0.0);
  s.expose(VertexSet::all(n), VertexSet::all(n), Layer::g1, seed);
  return s.layer_graph(Layer::g1);
}

// ---------------------------------------------------------------------------
// Round scripts: one "expose A_spec B_spec layer" per line, where a spec is
// "all", "set:<file>" or "range:a..b" and layer is g1, g2 or both.

struct ExposureRound {
  VertexSet a;
  VertexSet b;
  Layer layers;
};

namespace detail {

inline VertexSet parse_vertex_spec(const std::string& spec, std::size_t n,
                                   const std::filesystem::path& base) {
  if (spec == "all") return VertexSet::all(n);
  if (spec.rfind("range:", 0) == 0) {
    const auto body = spec.substr(6);
    const auto dots = body.find("..");
    require(dots != std::string::npos, "range spec must look like range:a..b");
    try {
      const auto lo = std::stoul(body.substr(0, dots));
      const auto hi = std::stoul(body.substr(dots + 2));
      return VertexSet::range(n, static_cast<Vertex>(lo), static_cast<Vertex>(hi));
    } catch (const std::logic_error&) {
      throw InputError("bad range spec: " + spec);
    }
  }
  if (spec.rfind("set:", 0) == 0) {
    std::filesystem::path file = spec.substr(4);
    if (file.is_relative()) file = base / file;
    std::ifstream in(file);
    require(static_cast<bool>(in), "cannot open vertex set file " + file.string());
    VertexSet s(n);
    long long v;
    while (in >> v) {
      require(v >= 0 && static_cast<std::size_t>(v) < n, "vertex set file: id out of range");
      s.insert(static_cast<Vertex>(v));
    }
    require(in.eof(), "vertex set file: non-numeric content");
    return s;
  }
  throw InputError("unknown vertex spec: " + spec);
}

inline Layer parse_layer(const std::string& s) {
  if (s == "g1" || s == "g1-only") return Layer::g1;
  if (s == "g2" || s == "g2-only") return Layer::g2;
  if (s == "both") return Layer::both;
  throw InputError("unknown layer: " + s);
}

}  // namespace detail

inline std::vector<ExposureRound> parse_round_script(std::istream& in, std::size_t n,
                                                     const std::filesystem::path& base = ".") {
  std::vector<ExposureRound> rounds;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string verb, a, b, layer, extra;
    if (!(ls >> verb)) continue;
    if (verb != "expose" || !(ls >> a >> b >> layer) || (ls >> extra))
      throw InputError("round script line " + std::to_string(lineno) +
                       ": expected \"expose A_spec B_spec layer\"");
    rounds.push_back({detail::parse_vertex_spec(a, n, base), detail::parse_vertex_spec(b, n, base),
                      detail::parse_layer(layer)});
  }
  return rounds;
}

}  // namespace holelab
