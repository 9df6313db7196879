#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace holelab {

/// Master seed plus a stream id. Identical (seed, stream) reproduce identical
/// draws bit-for-bit: the engine is standard-specified and every conversion to
/// reals or bounded integers below is our own.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  /// Sub-stream keyed by `sub`, distinct from every other child of this stream.
  RngSeed child(std::uint64_t sub) const {
    return {seed, mix(stream * 0x9E3779B97F4A7C15ull + sub + 1)};
  }

  static constexpr std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }
  std::uint64_t key() const { return mix(mix(seed) ^ mix(stream + 0x632BE59BD9B4E019ull)); }

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

class Rng {
public:
  explicit Rng(RngSeed s) : engine_(s.key()) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1], safe for log().
  double uniform_open0() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform() < p;
  }

  /// Uniform integer in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % bound;
  }

  /// Failures before the first success in Bernoulli(p) trials.
  std::uint64_t geometric(double p) {
    if (p >= 1.0) return 0;
    const double g = std::floor(std::log(uniform_open0()) / std::log1p(-p));
    return g >= 1.8e19 ? ~std::uint64_t{0} : static_cast<std::uint64_t>(g);
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace holelab
