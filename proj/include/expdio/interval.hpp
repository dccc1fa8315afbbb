#pragma once

// Certified real arithmetic: closed intervals [lo, hi] whose endpoints are
// MPFR floats rounded outward, so every result contains the exact value of
// the operation applied to any points of the operands.

#include <mpfr.h>

#include <optional>
#include <string>
#include <utility>

#include "expdio/bigint.hpp"

namespace expdio {

using Bits = mpfr_prec_t;

inline constexpr Bits kStartBits = 128;
inline constexpr Bits kMaxBits = 16384;

class Interval {
 public:
  explicit Interval(Bits bits = kStartBits);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval from_int(long v, Bits bits);
  static Interval from_big(const BigInt& v, Bits bits);
  static Interval from_rational(const Rational& q, Bits bits);
  // Exact conversion: every double is a dyadic rational.
  static Interval from_double(double v, Bits bits);
  // [lo, hi] from two rationals, rounded outward.
  static Interval hull(const Rational& lo, const Rational& hi, Bits bits);
  static Interval pi(Bits bits);
  // ln(n!) via MPFR's lngamma with directed rounding.
  static Interval log_factorial(unsigned long n, Bits bits);
  static Interval e(Bits bits);

  Bits bits() const { return mpfr_get_prec(lo_); }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  // Endpoints rounded outward to double.
  double lower() const;
  double upper() const;
  double mid() const;
  // Upper bound on hi - lo.
  double width() const;
  // log2 of the width, rounded up; -inf for points.
  double log2_width() const;

  bool contains(const Rational& q) const;
  bool contains(const Interval& inner) const;
  bool positive() const { return mpfr_sgn(lo_) > 0; }
  bool negative() const { return mpfr_sgn(hi_) < 0; }
  bool contains_zero() const { return !positive() && !negative(); }

  // Certain comparisons: true only if every point satisfies the relation.
  bool certainly_lt(const Interval& o) const { return mpfr_less_p(hi_, o.lo_) != 0; }
  bool certainly_le(const Interval& o) const { return mpfr_lessequal_p(hi_, o.lo_) != 0; }
  bool certainly_gt(const Interval& o) const { return o.certainly_lt(*this); }
  bool certainly_ge(const Interval& o) const { return o.certainly_le(*this); }

  // Rational bounds that enclose the interval (exact copies of endpoints).
  Rational lower_rational() const;
  Rational upper_rational() const;

  std::string str(int digits = 20) const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a);

  friend Interval log(const Interval& x);
  friend Interval exp(const Interval& x);
  friend Interval sqrt(const Interval& x);
  friend Interval atan(const Interval& x);
  friend Interval abs(const Interval& x);
  friend Interval pow(const Interval& x, unsigned long n);
  friend Interval min(const Interval& a, const Interval& b);
  friend Interval max(const Interval& a, const Interval& b);
  // Union hull.
  friend Interval join(const Interval& a, const Interval& b);

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

Interval operator+(const Interval& a, long b);
Interval operator*(const Interval& a, long b);
Interval operator/(const Interval& a, long b);

/// Enclosure of atan(v/u) of width at most 2^(1-bits). Requires u > 0, v > 0.
Interval interval_atan2(const BigInt& v, const BigInt& u, Bits bits);

/// Enclosure of ln(x) of width at most 2^(1-bits). Requires x > 0.
Interval interval_log(const Rational& x, Bits bits);

/// Runs `decide(bits)` with bits = start, 2*start, ... until it returns a
/// value; throws PrecisionExhausted past `cap`.
template <class F>
auto with_adaptive_precision(F&& decide, const std::string& what, Bits start = kStartBits,
                             Bits cap = kMaxBits) {
  for (Bits bits = start; bits <= cap; bits *= 2) {
    if (auto result = decide(bits)) return std::move(*result);
  }
  throw PrecisionExhausted(what);
}

}  // namespace expdio
