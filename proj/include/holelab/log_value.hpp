#pragma once

#include <cmath>
#include <limits>

namespace holelab {

/// A real number stored as sign and natural log of its magnitude, so that
/// quantities like q^(k choose 2) at k ~ 10^4 stay representable.
class LogValue {
public:
  constexpr LogValue() = default;  // zero

  static LogValue from_log(double log_magnitude, bool negative = false) {
    LogValue v;
    v.log_ = log_magnitude;
    v.negative_ = negative && log_magnitude != -inf();
    return v;
  }
  static LogValue from_double(double x) {
    return x == 0.0 ? LogValue{} : from_log(std::log(std::fabs(x)), x < 0.0);
  }
  static LogValue zero() { return {}; }
  static LogValue one() { return from_log(0.0); }

  double log() const noexcept { return log_; }
  double log10() const noexcept { return log_ / std::log(10.0); }
  bool negative() const noexcept { return negative_; }
  bool is_zero() const noexcept { return log_ == -inf(); }
  double value() const { return negative_ ? -std::exp(log_) : std::exp(log_); }

  LogValue operator-() const { return from_log(log_, !negative_); }

  friend LogValue operator*(LogValue a, LogValue b) {
    if (a.is_zero() || b.is_zero()) return {};
    return from_log(a.log_ + b.log_, a.negative_ != b.negative_);
  }
  friend LogValue operator/(LogValue a, LogValue b) {
    if (b.is_zero()) return from_log(inf(), a.negative_);
    if (a.is_zero()) return {};
    return from_log(a.log_ - b.log_, a.negative_ != b.negative_);
  }
  friend LogValue operator+(LogValue a, LogValue b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (b.log_ > a.log_) std::swap(a, b);
    const double gap = b.log_ - a.log_;  // <= 0
    if (a.negative_ == b.negative_) return from_log(a.log_ + std::log1p(std::exp(gap)), a.negative_);
    if (gap == 0.0) return {};
    return from_log(a.log_ + std::log1p(-std::exp(gap)), a.negative_);
  }
  friend LogValue operator-(LogValue a, LogValue b) { return a + (-b); }

  LogValue& operator*=(LogValue o) { return *this = *this * o; }
  LogValue& operator+=(LogValue o) { return *this = *this + o; }

  /// x^e for x >= 0 with 0^0 = 1.
  LogValue pow(double e) const {
    if (e == 0.0) return one();
    if (is_zero()) return e > 0 ? LogValue{} : from_log(inf());
    return from_log(log_ * e, negative_ && std::fmod(std::fabs(e), 2.0) == 1.0);
  }

  friend bool operator<(LogValue a, LogValue b) {
    if (a.negative_ != b.negative_) return a.negative_ && !(a.is_zero() && b.is_zero());
    return a.negative_ ? a.log_ > b.log_ : a.log_ < b.log_;
  }
  friend bool operator<=(LogValue a, LogValue b) { return !(b < a); }

private:
  static constexpr double inf() { return std::numeric_limits<double>::infinity(); }

  double log_ = -std::numeric_limits<double>::infinity();
  bool negative_ = false;
};

}  // namespace holelab
