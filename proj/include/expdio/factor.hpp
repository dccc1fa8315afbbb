#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "expdio/bigint.hpp"

namespace expdio {

struct PrimePower {
  BigInt prime;
  unsigned long exponent = 0;
};

/// Complete factorization with primes strictly increasing.
struct Factorization {
  std::vector<PrimePower> factors;
  // Set when some prime exceeded the deterministic Miller-Rabin range.
  bool probabilistic = false;

  BigInt value() const;
  std::size_t distinct() const { return factors.size(); }
};

/// Work budget for Pollard rho: total iterations across all cofactors.
struct FactorEffort {
  std::uint64_t rho_iterations = 4'000'000;
};

/// Deterministic for every n < 2^64 (first twelve prime bases); above that,
/// 25 extra random-base rounds and the result is flagged probabilistic.
bool is_probable_prime(const BigInt& n);
bool is_prime_deterministic_range(const BigInt& n);

bool is_prime_u64(std::uint64_t n);

Factorization factor(const BigInt& n, const FactorEffort& effort = {});
Factorization factor_u64(std::uint64_t n);

/// True if n = p^k for a prime p and k >= 1. Does not factor n completely.
bool is_prime_power(const BigInt& n);

/// Sieve of smallest prime factors for fast repeated factoring below a bound.
class SpfSieve {
 public:
  explicit SpfSieve(std::uint32_t limit);
  std::uint32_t limit() const { return limit_; }
  Factorization factor(std::uint32_t n) const;

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> spf_;
};

}  // namespace expdio
