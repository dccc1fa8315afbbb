#pragma once

#include <string>
#include <vector>

#include "expdio/bigint.hpp"

namespace expdio {

/// Dense univariate polynomial over Z; coeffs[i] multiplies x^i, no trailing zeros.
class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(std::vector<BigInt> coeffs);
  static ZPoly monomial(const BigInt& c, unsigned long degree);
  static ZPoly constant(const BigInt& c) { return monomial(c, 0); }

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const BigInt& coeff(unsigned long i) const;
  const BigInt& lead() const;
  const std::vector<BigInt>& coeffs() const { return c_; }

  BigInt eval(const BigInt& x) const;
  ZPoly derivative() const;
  BigInt content() const;
  ZPoly primitive() const;
  // Substitute x -> c * x.
  ZPoly scale_arg(const BigInt& c) const;

  friend ZPoly operator+(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator-(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator*(const BigInt& k, const ZPoly& a);
  friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<BigInt> c_;
};

ZPoly pow(const ZPoly& p, unsigned long e);

/// lc(b)^(deg a - deg b + 1) * a mod b.
ZPoly pseudo_remainder(const ZPoly& a, const ZPoly& b);

/// Exact quotient a / b; throws DomainError if b does not divide a over Z.
ZPoly divide_exact(const ZPoly& a, const ZPoly& b);

/// Resultant by the subresultant PRS.
BigInt resultant(const ZPoly& a, const ZPoly& b);

/// Resultant as the determinant of the Sylvester matrix (fraction-free Bareiss).
BigInt sylvester_resultant(const ZPoly& a, const ZPoly& b);

/// (-1)^(d(d-1)/2) res(f, f') / lc(f).
BigInt discriminant(const ZPoly& f);
BigInt discriminant_sylvester(const ZPoly& f);

/// Primitive gcd with positive leading coefficient.
ZPoly gcd(const ZPoly& a, const ZPoly& b);

/// Primitive squarefree part: product of the distinct irreducible factors.
ZPoly squarefree_part(const ZPoly& f);

}  // namespace expdio
