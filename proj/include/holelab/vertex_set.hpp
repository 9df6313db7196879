#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "holelab/errors.hpp"

namespace holelab {

using Vertex = std::uint32_t;

/// Fixed-universe bitset over the vertex ids [0, n).
class VertexSet {
public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  VertexSet(std::size_t universe, std::span<const Vertex> members) : VertexSet(universe) {
    for (Vertex v : members) insert(v);
  }
  VertexSet(std::size_t universe, std::initializer_list<Vertex> members) : VertexSet(universe) {
    for (Vertex v : members) insert(v);
  }

  static VertexSet all(std::size_t universe) {
    VertexSet s(universe);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  /// Vertices a..b inclusive.
  static VertexSet range(std::size_t universe, Vertex first, Vertex last) {
    detail::require(first <= last && last < universe, "vertex range out of bounds");
    VertexSet s(universe);
    for (Vertex v = first; v <= last; ++v) s.insert(v);
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  bool contains(Vertex v) const noexcept {
    return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1u);
  }
  void insert(Vertex v) {
    detail::require(v < universe_, "vertex id out of range");
    words_[v >> 6] |= std::uint64_t{1} << (v & 63);
  }
  void erase(Vertex v) {
    if (v < universe_) words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
  }

  VertexSet& operator&=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator|=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  /// Set difference.
  VertexSet& operator-=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  VertexSet complement() const {
    VertexSet s = *this;
    for (auto& w : s.words_) w = ~w;
    s.trim();
    return s;
  }

  /// Smallest member, or universe() when empty.
  Vertex first() const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<Vertex>(i * 64 + std::countr_zero(words_[i]));
    return static_cast<Vertex>(universe_);
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        f(static_cast<Vertex>(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    out.reserve(count());
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
  }

private:
  void trim() {
    if (universe_ % 64 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
  }
  void same_universe(const VertexSet& o) const {
    detail::require(o.universe_ == universe_, "vertex sets over different universes");
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace holelab
