#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "holelab/errors.hpp"
#include "holelab/log_value.hpp"

namespace holelab::bounds {

/// Parameter tuple shared by the evaluators below. Not every evaluator reads
/// every field.
struct BoundInput {
  std::uint64_t n = 0;
  double d = 0;        ///< n * p
  double p = 0;
  double epsilon = 0;
  std::uint64_t k = 0;  ///< forest order
  std::uint64_t e_f = 0;  ///< forest edge count
  double delta = 1;     ///< max degree of the forest
  double lipschitz = 1;  ///< L: Lipschitz constant / component order
  std::uint64_t s = 0;  ///< intersection size
  std::uint64_t c = 0;  ///< intersection components
  double t = 0;         ///< Talagrand deviation
  double b = 0;         ///< target order

  double q() const { return 1.0 / (1.0 - p); }
  double log_q() const { return -std::log1p(-p); }

  /// p = d / n, q = 1 / (1 - p).
  static BoundInput from_degree(std::uint64_t n, double d, double epsilon) {
    BoundInput in;
    in.n = n;
    in.d = d;
    in.p = d / static_cast<double>(n);
    in.epsilon = epsilon;
    return in;
  }

  void validate() const {
    holelab::detail::require(p >= 0.0 && p < 1.0, "p must lie in [0, 1)");
    holelab::detail::require(std::fabs(q() * (1.0 - p) - 1.0) <= 1e-12, "q (1 - p) must equal 1");
    holelab::detail::require(k <= n, "need k <= n");
    holelab::detail::require(s <= k, "need s <= k");
    holelab::detail::require(c <= s, "need c <= s");
    holelab::detail::require(k == 0 ? e_f == 0 : e_f <= k - 1, "a forest on k vertices has at most k - 1 edges");
  }
};

/// A value plus the regime conditions it was computed outside of.
struct Flagged {
  LogValue value;
  std::vector<std::string> warnings;
};

namespace detail {

inline double binom2(double x) { return x * (x - 1.0) / 2.0; }

/// log((n)_k) as a direct sum, for small arguments.
inline double log_falling_direct(std::uint64_t n, std::uint64_t k) {
  long double acc = 0.0L;
  for (std::uint64_t i = 0; i < k; ++i) acc += std::log(static_cast<long double>(n - i));
  return static_cast<double>(acc);
}

inline double log_falling_lgamma(std::uint64_t n, std::uint64_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(n - k) + 1.0);
}

inline constexpr std::uint64_t direct_path_limit = 1000;

inline LogValue pow_of(double base, double exponent) {
  return LogValue::from_double(base).pow(exponent);
}

}  // namespace detail

/// (n)_k = n (n-1) ... (n-k+1); zero when k > n.
inline LogValue falling_factorial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return LogValue::zero();
  if (k == 0) return LogValue::one();
  return LogValue::from_log(n < detail::direct_path_limit ? detail::log_falling_direct(n, k)
                                                          : detail::log_falling_lgamma(n, k));
}

inline LogValue binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return LogValue::zero();
  const std::uint64_t j = std::min(k, n - k);
  return falling_factorial(n, j) / falling_factorial(j, j);
}

/// E[Y] = (n)_k p^{e(F)} (1-p)^{C(k,2) - e(F)}, with Y the number of labelled
/// induced copies of a k-vertex forest F.
inline LogValue expected_copies(const BoundInput& in) {
  in.validate();
  const double k = static_cast<double>(in.k), e = static_cast<double>(in.e_f);
  return falling_factorial(in.n, in.k) * detail::pow_of(in.p, e) *
         detail::pow_of(1.0 - in.p, detail::binom2(k) - e);
}

/// P(A_sigma | A_sigma0) for a compatible sigma whose intersection graph has
/// s vertices and c components.
inline LogValue conditional_copy_probability(const BoundInput& in) {
  in.validate();
  const double k = static_cast<double>(in.k), e = static_cast<double>(in.e_f);
  const double s = static_cast<double>(in.s), c = static_cast<double>(in.c);
  const double p_exp = e - s + c;
  const double q_exp = detail::binom2(k) - detail::binom2(s) - e + s - c;
  if (p_exp < 0) throw InputError("conditional_copy_probability: negative exponent on p");
  if (q_exp < 0) throw InputError("conditional_copy_probability: negative exponent on 1 - p");
  return detail::pow_of(in.p, p_exp) * detail::pow_of(1.0 - in.p, q_exp);
}

/// C(k, c) k^c (6 Delta^2)^s (n-k)_{k-s}: upper bound on the number of
/// compatible sigma with intersection shape (s, c).
inline LogValue compatible_count_bound(const BoundInput& in) {
  in.validate();
  const std::uint64_t rest = in.n - in.k;
  return binomial(in.k, in.c) * detail::pow_of(static_cast<double>(in.k), static_cast<double>(in.c)) *
         detail::pow_of(6.0 * in.delta * in.delta, static_cast<double>(in.s)) *
         falling_factorial(rest, in.k - in.s);
}

/// Warnings for parameters outside k <= (2-eps) log_q d, Delta <= d^{eps/6}.
inline std::vector<std::string> second_moment_regime(const BoundInput& in) {
  std::vector<std::string> w;
  if (in.d <= 1.0) {
    w.push_back("d <= 1");
    return w;
  }
  const double kmax = (2.0 - in.epsilon) * std::log(in.d) / in.log_q();
  if (static_cast<double>(in.k) > kmax + 1e-9) w.push_back("k exceeds (2 - eps) log_q d");
  if (in.delta > std::pow(in.d, in.epsilon / 6.0) + 1e-12) w.push_back("Delta exceeds d^(eps/6)");
  return w;
}

/// The double sum
///   sum_{s=0}^{k} (n-k)_{k-s}/(n)_k p^{-s} q^{C(s,2)} (6 Delta^2)^s
///                 sum_{c=0}^{s} C(k,c) (kp)^c,
/// an upper bound on sum_sigma P(A_sigma | A_sigma0) / E[Y].
/// The inner sum is a prefix sum over c, so the cost is linear in k.
inline Flagged second_moment_ratio(const BoundInput& in) {
  in.validate();
  holelab::detail::require(in.p > 0.0, "second_moment_ratio: need p > 0");
  Flagged out{LogValue::zero(), second_moment_regime(in)};
  const double kp = static_cast<double>(in.k) * in.p;
  const LogValue denom = falling_factorial(in.n, in.k);
  LogValue inner = LogValue::zero();
  for (std::uint64_t s = 0; s <= in.k; ++s) {
    const double sd = static_cast<double>(s);
    inner += binomial(in.k, s) * detail::pow_of(kp, sd);
    out.value += falling_factorial(in.n - in.k, in.k - s) / denom * detail::pow_of(in.p, -sd) *
                 LogValue::from_log(detail::binom2(sd) * in.log_q()) *
                 detail::pow_of(6.0 * in.delta * in.delta, sd) * inner;
  }
  return out;
}

/// log of the closed form exp(10^4 Delta^2 n log^2 d / d^2 + 2 d^{-eps/7}).
inline double second_moment_closed_form_log(const BoundInput& in) {
  const double ld = std::log(in.d);
  return 1e4 * in.delta * in.delta * static_cast<double>(in.n) * ld * ld / (in.d * in.d) +
         2.0 * std::pow(in.d, -in.epsilon / 7.0);
}

struct PaleyZygmund {
  LogValue bound;        ///< 1 / second_moment_ratio, a lower bound on P(Y > 0)
  LogValue closed_form;  ///< exp(-10^4 Delta^2 n log^2 d / d^2 - 2 d^{-eps/7})
  std::vector<std::string> warnings;
};

inline PaleyZygmund paley_zygmund_lower_bound(const BoundInput& in) {
  auto ratio = second_moment_ratio(in);
  return {LogValue::one() / ratio.value, LogValue::from_log(-second_moment_closed_form_log(in)),
          std::move(ratio.warnings)};
}

/// (t+1) C(n,t) C(C(t,2), t) p^t (1-p)^{C(t,2)-t}: expected number of
/// t-sets spanning at most t edges (valid as stated for p <= 0.99).
inline LogValue first_moment_upper_bound(std::uint64_t n, double p, std::uint64_t t) {
  if (t > n) throw InputError("first_moment_upper_bound: t exceeds n");
  holelab::detail::require(p >= 0.0 && p <= 0.99, "first_moment_upper_bound: need 0 <= p <= 0.99");
  const std::uint64_t pairs = t * (t - (t > 0 ? 1 : 0)) / 2;
  const double td = static_cast<double>(t);
  return LogValue::from_double(td + 1.0) * binomial(n, t) * binomial(pairs, t) *
         detail::pow_of(p, td) * detail::pow_of(1.0 - p, static_cast<double>(pairs) - td);
}

/// t = ceil((2 + eps) log_q(np)).
inline std::uint64_t first_moment_order(const BoundInput& in) {
  return static_cast<std::uint64_t>(
      std::ceil((2.0 + in.epsilon) * std::log(static_cast<double>(in.n) * in.p) / in.log_q() - 1e-9));
}

inline LogValue first_moment_upper_bound(const BoundInput& in) {
  return first_moment_upper_bound(in.n, in.p, first_moment_order(in));
}

struct TalagrandTail {
  LogValue tail;        ///< exp(-t^2 / 4)
  double displacement;  ///< t L sqrt(b + L)
};

/// P(X <= b - t L sqrt(f(b))) P(X >= b) <= exp(-t^2/4) with f(s) = s + L.
inline TalagrandTail talagrand_tail(double lipschitz, double b, double t) {
  holelab::detail::require(t >= 0.0, "talagrand_tail: need t >= 0");
  holelab::detail::require(b + lipschitz >= 0.0, "talagrand_tail: need b + L >= 0");
  return {LogValue::from_log(-t * t / 4.0), t * lipschitz * std::sqrt(b + lipschitz)};
}

/// Talagrand with t = sqrt(n) log^3 d / d, the deviation used for T-matchings.
struct TalagrandInstantiation {
  double t;
  LogValue tail;        ///< exp(-n log^6 d / (4 d^2))
  double displacement;  ///< t L sqrt(b + L)
  double allowance;     ///< n / d
  bool within_allowance;
};

inline TalagrandInstantiation talagrand_instantiation(double n, double d, double lipschitz, double b) {
  holelab::detail::require(d > 1.0, "talagrand_instantiation: need d > 1");
  const double ld = std::log(d);
  const double t = std::sqrt(n) * ld * ld * ld / d;
  const auto tt = talagrand_tail(lipschitz, b, t);
  return {t, tt.tail, tt.displacement, n / d, tt.displacement <= n / d};
}

struct TargetLengths {
  double two_log_q;        ///< 2 log_q(np)
  double target_lower;      ///< (2 - eps) (n/d) log d
  double target_upper;      ///< (2 + eps) (n/d) log d
  double component_order;  ///< d^{1/2} / log^4 d
};

inline TargetLengths target_lengths(const BoundInput& in) {
  holelab::detail::require(in.d > 1.0, "target_lengths: need d > 1");
  const double n = static_cast<double>(in.n), ld = std::log(in.d);
  return {2.0 * std::log(n * in.p) / in.log_q(), (2.0 - in.epsilon) * n / in.d * ld,
          (2.0 + in.epsilon) * n / in.d * ld, std::sqrt(in.d) / (ld * ld * ld * ld)};
}

}  // namespace holelab::bounds
