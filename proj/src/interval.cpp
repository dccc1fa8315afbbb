#include "expdio/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace expdio {

namespace {

Bits joint_bits(const Interval& a, const Interval& b) { return std::max(a.bits(), b.bits()); }

// mpfr_t set from a rational with the requested rounding.
void set_rational(mpfr_t out, const Rational& q, mpfr_rnd_t rnd) {
  mpfr_set_q(out, q.get_mpq_t(), rnd);
}

std::string endpoint_str(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
  char* buf = nullptr;
  std::string fmt = "%." + std::to_string(digits) + "R" + (rnd == MPFR_RNDD ? "D" : "U") + "g";
  mpfr_asprintf(&buf, fmt.c_str(), x);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

}  // namespace

Interval::Interval(Bits bits) {
  mpfr_init2(lo_, bits);
  mpfr_init2(hi_, bits);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, other.bits());
  mpfr_init2(hi_, other.bits());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other.bits()) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.bits());
    mpfr_set_prec(hi_, other.bits());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::from_int(long v, Bits bits) {
  Interval out(bits);
  mpfr_set_si(out.lo_, v, MPFR_RNDD);
  mpfr_set_si(out.hi_, v, MPFR_RNDU);
  return out;
}

Interval Interval::from_big(const BigInt& v, Bits bits) {
  Interval out(bits);
  mpfr_set_z(out.lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(out.hi_, v.get_mpz_t(), MPFR_RNDU);
  return out;
}

Interval Interval::from_rational(const Rational& q, Bits bits) {
  Interval out(bits);
  set_rational(out.lo_, q, MPFR_RNDD);
  set_rational(out.hi_, q, MPFR_RNDU);
  return out;
}

Interval Interval::from_double(double v, Bits bits) {
  Interval out(std::max<Bits>(bits, 64));
  mpfr_set_d(out.lo_, v, MPFR_RNDD);
  mpfr_set_d(out.hi_, v, MPFR_RNDU);
  return out;
}

Interval Interval::hull(const Rational& lo, const Rational& hi, Bits bits) {
  if (lo > hi) throw DomainError("interval hull with lo > hi");
  Interval out(bits);
  set_rational(out.lo_, lo, MPFR_RNDD);
  set_rational(out.hi_, hi, MPFR_RNDU);
  return out;
}

Interval Interval::pi(Bits bits) {
  Interval out(bits);
  mpfr_const_pi(out.lo_, MPFR_RNDD);
  mpfr_const_pi(out.hi_, MPFR_RNDU);
  return out;
}

Interval Interval::log_factorial(unsigned long n, Bits bits) {
  Interval out(bits);
  mpfr_t x;
  mpfr_init2(x, 64);
  mpfr_set_ui(x, n + 1, MPFR_RNDN);  // exact
  mpfr_lngamma(out.lo_, x, MPFR_RNDD);
  mpfr_lngamma(out.hi_, x, MPFR_RNDU);
  mpfr_clear(x);
  return out;
}

Interval Interval::e(Bits bits) { return exp(from_int(1, bits)); }

double Interval::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }
double Interval::mid() const { return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)); }

double Interval::width() const {
  mpfr_t w;
  mpfr_init2(w, bits());
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double out = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return out;
}

double Interval::log2_width() const {
  mpfr_t w;
  mpfr_init2(w, bits());
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double out = -std::numeric_limits<double>::infinity();
  if (mpfr_sgn(w) > 0) {
    mpfr_log2(w, w, MPFR_RNDU);
    out = mpfr_get_d(w, MPFR_RNDU);
  }
  mpfr_clear(w);
  return out;
}

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::contains(const Interval& inner) const {
  return mpfr_lessequal_p(lo_, inner.lo_) && mpfr_greaterequal_p(hi_, inner.hi_);
}

Rational Interval::lower_rational() const {
  Rational out;
  mpfr_get_q(out.get_mpq_t(), lo_);
  return out;
}

Rational Interval::upper_rational() const {
  Rational out;
  mpfr_get_q(out.get_mpq_t(), hi_);
  return out;
}

std::string Interval::str(int digits) const {
  std::ostringstream os;
  os << "[" << endpoint_str(lo_, digits, MPFR_RNDD) << ", " << endpoint_str(hi_, digits, MPFR_RNDU)
     << "]";
  return os.str();
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval out(joint_bits(a, b));
  mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval out(joint_bits(a, b));
  mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return out;
}

Interval operator-(const Interval& a) {
  Interval out(a.bits());
  mpfr_neg(out.lo_, a.hi_, MPFR_RNDD);
  mpfr_neg(out.hi_, a.lo_, MPFR_RNDU);
  return out;
}

Interval operator*(const Interval& a, const Interval& b) {
  const Bits bits = joint_bits(a, b);
  Interval out(bits);
  mpfr_t t;
  mpfr_init2(t, bits);
  mpfr_srcptr xs[2] = {a.lo_, a.hi_};
  mpfr_srcptr ys[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, out.lo_)) mpfr_set(out.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, out.hi_)) mpfr_set(out.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return out;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw DomainError("interval division by an interval containing 0");
  const Bits bits = joint_bits(a, b);
  Interval out(bits);
  mpfr_t t;
  mpfr_init2(t, bits);
  mpfr_srcptr xs[2] = {a.lo_, a.hi_};
  mpfr_srcptr ys[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, out.lo_)) mpfr_set(out.lo_, t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, out.hi_)) mpfr_set(out.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return out;
}

Interval operator+(const Interval& a, long b) { return a + Interval::from_int(b, a.bits()); }
Interval operator*(const Interval& a, long b) { return a * Interval::from_int(b, a.bits()); }
Interval operator/(const Interval& a, long b) { return a / Interval::from_int(b, a.bits()); }

Interval log(const Interval& x) {
  if (!x.positive()) throw DomainError("log of an interval not strictly positive");
  Interval out(x.bits());
  mpfr_log(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

Interval exp(const Interval& x) {
  Interval out(x.bits());
  mpfr_exp(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

Interval sqrt(const Interval& x) {
  if (mpfr_sgn(x.lo_) < 0) throw DomainError("sqrt of an interval with negative points");
  Interval out(x.bits());
  mpfr_sqrt(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_sqrt(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

Interval atan(const Interval& x) {
  Interval out(x.bits());
  mpfr_atan(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_atan(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

Interval abs(const Interval& x) {
  if (mpfr_sgn(x.lo_) >= 0) return x;
  if (mpfr_sgn(x.hi_) <= 0) return -x;
  Interval out(x.bits());
  mpfr_set_zero(out.lo_, 1);
  mpfr_neg(out.hi_, x.lo_, MPFR_RNDU);
  if (mpfr_greater_p(x.hi_, out.hi_)) mpfr_set(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

Interval pow(const Interval& x, unsigned long n) {
  if (n == 0) return Interval::from_int(1, x.bits());
  Interval base = (n % 2 == 0) ? abs(x) : x;
  Interval out(x.bits());
  // x -> x^n is monotone on the (possibly folded) base.
  mpfr_pow_ui(out.lo_, base.lo_, n, MPFR_RNDD);
  mpfr_pow_ui(out.hi_, base.hi_, n, MPFR_RNDU);
  return out;
}

Interval min(const Interval& a, const Interval& b) {
  Interval out(joint_bits(a, b));
  mpfr_min(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Interval max(const Interval& a, const Interval& b) {
  Interval out(joint_bits(a, b));
  mpfr_max(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Interval join(const Interval& a, const Interval& b) {
  Interval out(joint_bits(a, b));
  mpfr_min(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Interval interval_atan2(const BigInt& v, const BigInt& u, Bits bits) {
  if (u == 0) throw DomainError("interval_atan2 requires u != 0");
  if (u < 0 || v <= 0) throw DomainError("interval_atan2 requires u > 0 and v > 0");
  const Rational q = make_rational(v, u);
  const double limit = 1.0 - static_cast<double>(bits);
  for (Bits work = bits + 16; work <= kMaxBits * 4; work *= 2) {
    Interval out = atan(Interval::from_rational(q, work));
    if (out.log2_width() <= limit) return out;
  }
  throw PrecisionExhausted("interval_atan2");
}

Interval interval_log(const Rational& x, Bits bits) {
  if (x <= 0) throw DomainError("interval_log requires x > 0");
  const double limit = 1.0 - static_cast<double>(bits);
  // Extra working bits cover the magnitude of ln(x).
  const Bits magnitude = static_cast<Bits>(mpz_sizeinbase(x.get_num_mpz_t(), 2) +
                                           mpz_sizeinbase(x.get_den_mpz_t(), 2));
  for (Bits work = bits + 16 + std::max<Bits>(8, static_cast<Bits>(std::log2(magnitude + 1.0)) + 2);
       work <= kMaxBits * 4; work *= 2) {
    Interval out = log(Interval::from_rational(x, work));
    if (out.log2_width() <= limit) return out;
  }
  throw PrecisionExhausted("interval_log");
}

}  // namespace expdio
