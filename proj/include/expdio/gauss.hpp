#pragma once

#include <ostream>

#include "expdio/bigint.hpp"

namespace expdio {

/// Exact Gaussian integer re + im*i.
struct GaussInt {
  BigInt re{0};
  BigInt im{0};

  GaussInt() = default;
  GaussInt(BigInt r, BigInt i) : re(std::move(r)), im(std::move(i)) {}

  BigInt norm() const { return re * re + im * im; }
  GaussInt conj() const { return {re, -im}; }

  friend GaussInt operator+(const GaussInt& a, const GaussInt& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussInt operator-(const GaussInt& a, const GaussInt& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussInt operator-(const GaussInt& a) { return {-a.re, -a.im}; }
  friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussInt& a, const GaussInt& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend std::ostream& operator<<(std::ostream& os, const GaussInt& g) {
    return os << g.re << (g.im < 0 ? "-" : "+") << abs(g.im) << "i";
  }
};

/// Exact power by repeated squaring; gauss_pow(g, 0) == 1.
inline GaussInt gauss_pow(GaussInt base, unsigned long n) {
  GaussInt out{1, 0};
  while (n > 0) {
    if (n & 1UL) out = out * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return out;
}

}  // namespace expdio
