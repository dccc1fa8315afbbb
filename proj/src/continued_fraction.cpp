#include "expdio/continued_fraction.hpp"

namespace expdio {

namespace {

std::vector<BigInt> cf_of(Rational x, std::size_t limit) {
  std::vector<BigInt> out;
  while (out.size() < limit) {
    BigInt a = floor(x);
    out.push_back(a);
    Rational frac = x - Rational(a);
    if (frac == 0) break;
    x = 1 / frac;
  }
  return out;
}

}  // namespace

std::vector<BigInt> common_partial_quotients(const Rational& lo, const Rational& hi) {
  const auto a = cf_of(lo, 4096), b = cf_of(hi, 4096);
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < a.size() && i < b.size() && a[i] == b[i]; ++i) out.push_back(a[i]);
  if (!out.empty()) out.pop_back();
  return out;
}

std::vector<Convergent> convergents(const std::vector<BigInt>& quotients) {
  std::vector<Convergent> out;
  BigInt p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // p_{-1}, q_{-1}, p_{-2}, q_{-2}
  for (const auto& a : quotients) {
    BigInt p = a * p0 + p1, q = a * q0 + q1;
    out.push_back({a, p, q});
    p1 = p0;
    q1 = q0;
    p0 = p;
    q0 = q;
  }
  return out;
}

Interval angle_ratio(const Representation& rep, Bits bits) {
  const Interval xi = interval_atan2(rep.v, rep.u, bits + 8);
  return xi * 2 / Interval::pi(bits + 8);
}

Interval dist_to_int(const Interval& t) {
  const Rational lo = t.lower_rational(), hi = t.upper_rational();
  const BigInt k = floor(Rational((lo + hi) / 2 + make_rational(1, 2)));
  const Rational half(1, 2);
  if (lo > Rational(k) - half && hi < Rational(k) + half) {
    return abs(t - Interval::from_big(k, t.bits()));
  }
  return Interval::hull(0, half, t.bits());
}

Interval dist_to_parity(const Interval& t, bool odd) {
  // Distance to 2Z + s equals 2 * ||(t - s) / 2||.
  const Interval shifted = odd ? t - Interval::from_int(1, t.bits()) : t;
  return dist_to_int(shifted / 2) * 2;
}

AngleExpansion expand_angle(const Representation& rep, const BigInt& q_limit) {
  for (Bits bits = kStartBits; bits <= kMaxBits; bits *= 2) {
    AngleExpansion out;
    out.bits = bits;
    out.x = angle_ratio(rep, bits);
    out.conv = convergents(common_partial_quotients(out.x.lower_rational(), out.x.upper_rational()));
    if (!out.conv.empty() && out.conv.back().q > q_limit) return out;
  }
  throw PrecisionExhausted("continued fraction of the angle of " + rep.c.get_str());
}

AngleBound angle_min_lower_bound(const Representation& rep, unsigned long n_max) {
  if (n_max < 3) throw DomainError("angle_min_lower_bound requires n_max >= 3");
  if (n_max > 1'000'000) throw DomainError("angle_min_lower_bound limited to n_max <= 1e6");
  const AngleExpansion ex = expand_angle(rep, BigInt(n_max));
  // Largest q_j <= n_max; every n < q_{j+1} has ||n x|| >= ||q_j x||.
  const Convergent* best = nullptr;
  for (const auto& c : ex.conv) {
    if (c.q <= n_max) best = &c;
  }
  const Interval d = dist_to_int(Interval::from_big(best->q, ex.bits) * ex.x);
  const Interval bound = d * Interval::pi(ex.bits);
  AngleBound out;
  out.lower = bound.lower_rational();
  out.supporting_q = best->q;
  out.bits = ex.bits;
  if (out.lower <= 0) throw PrecisionExhausted("angle bound not positive");
  return out;
}

Interval angle_distance(const Representation& rep, unsigned long n, Bits bits) {
  const Interval x = angle_ratio(rep, bits + 32);
  return dist_to_int(x * static_cast<long>(n)) * Interval::pi(bits + 32);
}

}  // namespace expdio
