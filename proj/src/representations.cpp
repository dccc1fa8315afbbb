#include "expdio/representations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace expdio {

bool Representation::valid() const {
  return u > 0 && v > 0 && u * u + v * v == c && gcd(u, v) == 1 && u % 2 == 0 && v % 2 != 0;
}

BigInt tonelli_shanks(const BigInt& n, const BigInt& p) {
  if (mpz_legendre(n.get_mpz_t(), p.get_mpz_t()) != 1) throw DomainError("not a quadratic residue");
  BigInt q = p - 1;
  unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
  q >>= s;
  BigInt z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  BigInt m = s, c, t, r, e;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), n.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  while (t != 1) {
    unsigned long i = 0;
    BigInt tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    BigInt b = c;
    for (unsigned long k = 0; k + 1 + i < m.get_ui(); ++k) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

BigInt sqrt_minus_one(const BigInt& p) {
  if (p % 4 != 1) throw DomainError("sqrt(-1) needs p = 1 mod 4");
  BigInt x = tonelli_shanks(p - 1, p);
  return x;
}

GaussInt cornacchia_prime(const BigInt& p) {
  if (p == 2) return {1, 1};
  BigInt x = sqrt_minus_one(p);
  if (2 * x > p) x = p - x;
  BigInt a = p, b = x;
  const BigInt limit = isqrt(p);
  while (b > limit) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  BigInt rest = p - b * b;
  if (!is_square(rest)) throw DomainError("cornacchia failed for " + p.get_str());
  return {b, isqrt(rest)};
}

Representation normalize(const BigInt& c, const GaussInt& g) {
  BigInt x = abs(g.re), y = abs(g.im);
  if (x % 2 != 0) std::swap(x, y);
  return {c, x, y};
}

std::vector<Representation> cornacchia_all(const BigInt& c, const Factorization& fac) {
  std::vector<Representation> out;
  if (c < 2 || c % 2 == 0) return out;
  std::vector<GaussInt> parts;
  for (const auto& f : fac.factors) {
    if (f.prime % 4 != 1) return out;
    parts.push_back(gauss_pow(cornacchia_prime(f.prime), f.exponent));
  }
  if (parts.empty()) return out;
  // Fix the first prime's orientation: its conjugate only gives the conjugate rep.
  const std::size_t t = parts.size();
  for (std::uint64_t mask = 0; mask < (1ULL << (t - 1)); ++mask) {
    GaussInt g = parts[0];
    for (std::size_t i = 1; i < t; ++i) g = g * (((mask >> (i - 1)) & 1) ? parts[i].conj() : parts[i]);
    out.push_back(normalize(c, g));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Representation> cornacchia_all(const BigInt& c) {
  if (c < 2) return {};
  return cornacchia_all(c, factor(c));
}

std::vector<Representation> brute_force_representations(std::uint64_t c) {
  std::vector<Representation> out;
  for (std::uint64_t u = 2; u * u < c; u += 2) {
    const std::uint64_t rest = c - u * u;
    const auto v = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(rest)));
    for (std::uint64_t w = (v > 0 ? v - 1 : 0); w <= v + 1; ++w) {
      if (w * w == rest && w % 2 == 1 && std::gcd(u, w) == 1) {
        out.push_back({from_u64(c), from_u64(u), from_u64(w)});
      }
    }
  }
  return out;
}

SolutionWitness witness_from(const Representation& rep, unsigned long r) {
  if (r % 2 == 0) throw DomainError("witness_from requires odd r");
  const GaussInt p = gauss_pow(rep.epsilon(), r);
  SolutionWitness w{rep, r, abs(p.re), abs(p.im)};
  if (w.a * w.a + w.b * w.b != pow(rep.c, r)) throw DomainError("witness identity failed");
  return w;
}

bool residue_class_filter(const BigInt& c, const Factorization& fac) {
  return c >= 85 && c % 8 == 5 && fac.distinct() >= 2;
}

bool residue_class_filter(const BigInt& c) {
  return c >= 85 && c % 8 == 5 && !is_prime_power(c);
}

}  // namespace expdio
