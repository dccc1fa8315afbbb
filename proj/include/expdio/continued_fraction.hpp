#pragma once

#include <vector>

#include "expdio/interval.hpp"
#include "expdio/representations.hpp"

namespace expdio {

struct Convergent {
  BigInt a;  // partial quotient
  BigInt p;
  BigInt q;
};

/// Partial quotients shared by every real in [lo, hi] (the last common one is
/// dropped, so the prefix is valid for all points of the interval).
std::vector<BigInt> common_partial_quotients(const Rational& lo, const Rational& hi);

std::vector<Convergent> convergents(const std::vector<BigInt>& quotients);

/// Enclosure of 2 atan(v/u) / pi, the angle of eps^2 in units of pi.
Interval angle_ratio(const Representation& rep, Bits bits);

/// Enclosure of the distance from t to the nearest integer.
Interval dist_to_int(const Interval& t);
/// Enclosure of the distance from t to the nearest even (odd) integer.
Interval dist_to_parity(const Interval& t, bool odd);

/// Convergents of angle_ratio(rep) until q exceeds q_limit, refining precision
/// as needed.
struct AngleExpansion {
  Bits bits = kStartBits;
  Interval x;
  std::vector<Convergent> conv;
};
AngleExpansion expand_angle(const Representation& rep, const BigInt& q_limit);

struct AngleBound {
  // pi * ||q x|| lower bound with q the largest convergent denominator <= n_max.
  Rational lower;
  BigInt supporting_q;
  Bits bits = 0;
};

/// Certified lower bound on min over odd 3 <= n <= n_max of min_k |2 n xi - k pi|.
AngleBound angle_min_lower_bound(const Representation& rep, unsigned long n_max);

/// Direct enclosure of min_k |2 n xi - k pi| = pi ||n x||.
Interval angle_distance(const Representation& rep, unsigned long n, Bits bits);

}  // namespace expdio
