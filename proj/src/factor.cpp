#include "expdio/factor.hpp"

#include <algorithm>
#include <map>

namespace expdio {

namespace {

constexpr unsigned long kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

bool mr_round_u64(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s) {
  std::uint64_t x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool mr_round(const BigInt& n, const BigInt& a, const BigInt& d, unsigned long s) {
  BigInt x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const BigInt nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == nm1) return true;
  }
  return false;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// Brent's variant; returns a nontrivial factor or 0 when the budget runs out.
std::uint64_t rho_u64(std::uint64_t n, std::uint64_t& budget) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1; budget > 0; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (g == 1 && budget > 0) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += 128) {
        ys = y;
        const std::uint64_t lim = std::min<std::uint64_t>(128, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u64(q, n);
        budget = budget > lim ? budget - lim : 0;
      }
      r <<= 1;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd_u64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return 0;
}

BigInt rho_big(const BigInt& n, std::uint64_t& budget) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1; budget > 0; ++c) {
    BigInt x = 2, y = 2, g = 1;
    while (g == 1 && budget > 0) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      g = gcd(abs(BigInt(x - y)), n);
      --budget;
    }
    if (g != n && g != 1) return g;
  }
  return 0;
}

void split(const BigInt& n, std::map<BigInt, unsigned long>& acc, std::uint64_t& budget,
           bool& probabilistic) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    if (!is_prime_deterministic_range(n)) probabilistic = true;
    acc[n] += 1;
    return;
  }
  BigInt root;
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned long k = 2;; ++k) {
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k)) {
        std::map<BigInt, unsigned long> inner;
        split(root, inner, budget, probabilistic);
        for (auto& [p, e] : inner) acc[p] += e * k;
        return;
      }
    }
  }
  BigInt d;
  if (fits_u64(n)) {
    const std::uint64_t f = rho_u64(to_u64(n), budget);
    if (f != 0) d = from_u64(f);
  } else {
    d = rho_big(n, budget);
  }
  if (d == 0) throw FactorLimitExceeded("cofactor " + n.get_str());
  split(d, acc, budget, probabilistic);
  split(n / d, acc, budget, probabilistic);
}

}  // namespace

BigInt Factorization::value() const {
  BigInt out = 1;
  for (const auto& f : factors) out *= pow(f.prime, f.exponent);
  return out;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (unsigned long p : kSmallPrimes) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // These 12 bases are deterministic for all 64-bit n.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (!mr_round_u64(n, a, d, s)) return false;
  }
  return true;
}

bool is_prime_deterministic_range(const BigInt& n) {
  return fits_u64(n);
}

bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  for (unsigned long p : kSmallPrimes) {
    if (n % p == 0) return n == p;
  }
  BigInt d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  for (unsigned long p : kSmallPrimes) {
    if (!mr_round(n, p, d, s)) return false;
  }
  return mpz_probab_prime_p(n.get_mpz_t(), 25) != 0;
}

Factorization factor_u64(std::uint64_t n) {
  if (n < 2) throw DomainError("factor requires n >= 2");
  Factorization out;
  for (std::uint64_t p = 2; p * p <= n && p < 4096; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    unsigned long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.factors.push_back({from_u64(p), e});
  }
  if (n > 1) {
    if (n < 4096ULL * 4096ULL || is_prime_u64(n)) {
      out.factors.push_back({from_u64(n), 1});
    } else {
      Factorization rest = factor(from_u64(n));
      out.factors.insert(out.factors.end(), rest.factors.begin(), rest.factors.end());
      out.probabilistic = rest.probabilistic;
    }
  }
  return out;
}

Factorization factor(const BigInt& n, const FactorEffort& effort) {
  if (n < 2) throw DomainError("factor requires n >= 2");
  std::map<BigInt, unsigned long> acc;
  BigInt rest = n;
  for (unsigned long p = 2; p < 1024; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      acc[BigInt(p)] += mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), BigInt(p).get_mpz_t());
    }
  }
  Factorization out;
  std::uint64_t budget = effort.rho_iterations;
  split(rest, acc, budget, out.probabilistic);
  for (auto& [p, e] : acc) out.factors.push_back({p, e});
  return out;
}

bool is_prime_power(const BigInt& n) {
  if (n < 2) return false;
  if (is_probable_prime(n)) return true;
  BigInt root;
  if (!mpz_perfect_power_p(n.get_mpz_t())) return false;
  for (unsigned long k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) && is_probable_prime(root)) return true;
  }
  return false;
}

SpfSieve::SpfSieve(std::uint32_t limit) : limit_(limit), spf_(limit + 1, 0) {
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (spf_[i]) continue;
    for (std::uint64_t j = i; j <= limit; j += i) {
      if (!spf_[j]) spf_[j] = i;
    }
  }
}

Factorization SpfSieve::factor(std::uint32_t n) const {
  if (n < 2 || n > limit_) throw DomainError("SpfSieve::factor out of range");
  Factorization out;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    unsigned long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.factors.push_back({BigInt(static_cast<unsigned long>(p)), e});
  }
  return out;
}

}  // namespace expdio
