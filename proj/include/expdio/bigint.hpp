#pragma once

// Exact integers and rationals. GMP's C++ classes already give value
// semantics, canonical zero and reduced rationals; this header adds the few
// number-theoretic helpers the rest of the toolkit needs.

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "expdio/errors.hpp"

namespace expdio {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

inline BigInt big_from_string(const std::string& s) {
  BigInt out;
  if (out.set_str(s, 10) != 0) throw DomainError("not an integer: " + s);
  return out;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

inline BigInt isqrt(const BigInt& n) {
  if (n < 0) throw DomainError("isqrt of negative");
  BigInt out;
  mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
  return out;
}

inline bool is_square(const BigInt& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline BigInt abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

// Largest e with p^e | n; n must be nonzero.
inline unsigned long valuation(const BigInt& n, const BigInt& p) {
  if (n == 0) throw DomainError("valuation of zero");
  BigInt rest;
  return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

inline unsigned long valuation(std::uint64_t n, std::uint64_t p) {
  if (n == 0) throw DomainError("valuation of zero");
  unsigned long e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

// floor(a / b) for b > 0, exact.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline BigInt floor(const Rational& q) { return floor_div(q.get_num(), q.get_den()); }

inline BigInt ceil(const Rational& q) {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

inline std::string to_string(const BigInt& n) { return n.get_str(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool fits_u64(const BigInt& n) {
  return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const BigInt& n) {
  if (!fits_u64(n)) throw DomainError("value does not fit in 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

inline BigInt from_u64(std::uint64_t v) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

}  // namespace expdio
