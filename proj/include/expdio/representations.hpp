#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "expdio/factor.hpp"
#include "expdio/gauss.hpp"

namespace expdio {

/// Primitive c = u^2 + v^2 with u even, v odd, both positive.
struct Representation {
  BigInt c;
  BigInt u;
  BigInt v;

  GaussInt epsilon() const { return {u, v}; }
  bool valid() const;

  friend bool operator==(const Representation& a, const Representation& b) {
    return a.c == b.c && a.u == b.u && a.v == b.v;
  }
  friend bool operator<(const Representation& a, const Representation& b) {
    if (a.c != b.c) return a.c < b.c;
    return a.u < b.u;
  }
  friend std::ostream& operator<<(std::ostream& os, const Representation& r) {
    return os << "(c=" << r.c << ", u=" << r.u << ", v=" << r.v << ")";
  }
};

/// a^2 + b^2 = c^r built from eps^r.
struct SolutionWitness {
  Representation rep;
  unsigned long r = 1;
  BigInt a;
  BigInt b;
};

/// x with x^2 = -1 (mod p), p prime = 1 (mod 4).
BigInt sqrt_minus_one(const BigInt& p);

/// Modular square root of n mod odd prime p (Tonelli-Shanks); n must be a residue.
BigInt tonelli_shanks(const BigInt& n, const BigInt& p);

/// Cornacchia for a prime p = 1 (mod 4): returns x + yi with x^2 + y^2 = p.
GaussInt cornacchia_prime(const BigInt& p);

/// All primitive representations of c, normalized and sorted by u.
std::vector<Representation> cornacchia_all(const BigInt& c, const Factorization& fac);
std::vector<Representation> cornacchia_all(const BigInt& c);

/// Reference enumeration over u < sqrt(c), used as an oracle.
std::vector<Representation> brute_force_representations(std::uint64_t c);

SolutionWitness witness_from(const Representation& rep, unsigned long r);

/// c = 5 (mod 8), c not a prime power, c >= 85.
bool residue_class_filter(const BigInt& c, const Factorization& fac);
bool residue_class_filter(const BigInt& c);

/// Normalize any Gaussian integer of norm c to the (u even, v odd, positive) form.
Representation normalize(const BigInt& c, const GaussInt& g);

}  // namespace expdio
