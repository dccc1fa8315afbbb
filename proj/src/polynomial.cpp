#include "expdio/polynomial.hpp"

#include <sstream>

namespace expdio {

ZPoly::ZPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

ZPoly ZPoly::monomial(const BigInt& c, unsigned long degree) {
  std::vector<BigInt> v(degree + 1, 0);
  v[degree] = c;
  return ZPoly(std::move(v));
}

void ZPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const BigInt& ZPoly::coeff(unsigned long i) const {
  static const BigInt zero = 0;
  return i < c_.size() ? c_[i] : zero;
}

const BigInt& ZPoly::lead() const {
  if (c_.empty()) throw DomainError("leading coefficient of zero polynomial");
  return c_.back();
}

BigInt ZPoly::eval(const BigInt& x) const {
  BigInt out = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * x + *it;
  return out;
}

ZPoly ZPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<BigInt> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return ZPoly(std::move(d));
}

BigInt ZPoly::content() const {
  BigInt g = 0;
  for (const auto& x : c_) g = expdio::gcd(g, x);
  return g;
}

ZPoly ZPoly::primitive() const {
  if (is_zero()) return {};
  BigInt g = content();
  if (lead() < 0) g = -g;
  std::vector<BigInt> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) mpz_divexact(v[i].get_mpz_t(), c_[i].get_mpz_t(), g.get_mpz_t());
  return ZPoly(std::move(v));
}

ZPoly ZPoly::scale_arg(const BigInt& c) const {
  std::vector<BigInt> v(c_);
  BigInt p = 1;
  for (auto& x : v) {
    x *= p;
    p *= c;
  }
  return ZPoly(std::move(v));
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
  std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return ZPoly(std::move(v));
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) { return a + BigInt(-1) * b; }

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> v(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t k = 0; k < b.c_.size(); ++k) v[i + k] += a.c_[i] * b.c_[k];
  }
  return ZPoly(std::move(v));
}

ZPoly operator*(const BigInt& k, const ZPoly& a) {
  std::vector<BigInt> v(a.c_);
  for (auto& x : v) x *= k;
  return ZPoly(std::move(v));
}

std::string ZPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = degree(); i >= 0; --i) {
    const BigInt& x = c_[static_cast<std::size_t>(i)];
    if (x == 0) continue;
    if (!first) os << (x < 0 ? " - " : " + ");
    else if (x < 0) os << "-";
    const BigInt m = abs(x);
    if (m != 1 || i == 0) os << m;
    if (i > 0) os << var;
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

ZPoly pow(const ZPoly& p, unsigned long e) {
  ZPoly out = ZPoly::constant(1), base = p;
  while (e) {
    if (e & 1) out = out * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

namespace {

// Returns (q, r) with lc(b)^k a = q b + r, k = deg a - deg b + 1.
std::pair<ZPoly, ZPoly> pseudo_divide(const ZPoly& a, const ZPoly& b) {
  if (b.is_zero()) throw DomainError("pseudo-division by zero polynomial");
  const long db = b.degree();
  if (a.degree() < db) return {ZPoly(), a};
  const BigInt& lb = b.lead();
  std::vector<BigInt> r(a.coeffs());
  std::vector<BigInt> q(static_cast<std::size_t>(a.degree() - db + 1), 0);
  long e = a.degree() - db + 1;
  for (long k = a.degree(); k >= db; --k) {
    const BigInt lr = r[static_cast<std::size_t>(k)];
    for (auto& x : q) x *= lb;
    q[static_cast<std::size_t>(k - db)] += lr;
    for (auto& x : r) x *= lb;
    for (long i = 0; i <= db; ++i) r[static_cast<std::size_t>(k - db + i)] -= lr * b.coeff(static_cast<unsigned long>(i));
    --e;
  }
  BigInt rest = pow(lb, static_cast<unsigned long>(e));
  for (auto& x : q) x *= rest;
  for (auto& x : r) x *= rest;
  return {ZPoly(std::move(q)), ZPoly(std::move(r))};
}

}  // namespace

ZPoly pseudo_remainder(const ZPoly& a, const ZPoly& b) { return pseudo_divide(a, b).second; }

ZPoly divide_exact(const ZPoly& a, const ZPoly& b) {
  if (b.is_zero()) throw DomainError("division by zero polynomial");
  if (a.is_zero()) return {};
  const long db = b.degree();
  if (a.degree() < db) throw DomainError("divide_exact: not divisible");
  std::vector<BigInt> r(a.coeffs());
  std::vector<BigInt> q(static_cast<std::size_t>(a.degree() - db + 1), 0);
  for (long k = a.degree(); k >= db; --k) {
    const BigInt& lr = r[static_cast<std::size_t>(k)];
    if (lr == 0) continue;
    if (!mpz_divisible_p(lr.get_mpz_t(), b.lead().get_mpz_t())) throw DomainError("divide_exact: not divisible");
    BigInt t;
    mpz_divexact(t.get_mpz_t(), lr.get_mpz_t(), b.lead().get_mpz_t());
    q[static_cast<std::size_t>(k - db)] = t;
    for (long i = 0; i <= db; ++i) r[static_cast<std::size_t>(k - db + i)] -= t * b.coeff(static_cast<unsigned long>(i));
  }
  for (const auto& x : r) {
    if (x != 0) throw DomainError("divide_exact: nonzero remainder");
  }
  return ZPoly(std::move(q));
}

BigInt resultant(const ZPoly& a0, const ZPoly& b0) {
  if (a0.is_zero() || b0.is_zero()) return 0;
  ZPoly A = a0, B = b0;
  BigInt s = 1;
  if (A.degree() < B.degree()) {
    std::swap(A, B);
    if (A.degree() % 2 == 1 && B.degree() % 2 == 1) s = -s;
  }
  if (B.degree() == 0) return s * pow(B.lead(), static_cast<unsigned long>(A.degree()));
  const BigInt ca = A.content(), cb = B.content();
  BigInt t = pow(ca, static_cast<unsigned long>(B.degree())) * pow(cb, static_cast<unsigned long>(A.degree()));
  A = divide_exact(A, ZPoly::constant(ca));
  B = divide_exact(B, ZPoly::constant(cb));
  BigInt g = 1, h = 1;
  for (;;) {
    const long delta = A.degree() - B.degree();
    if (A.degree() % 2 == 1 && B.degree() % 2 == 1) s = -s;
    ZPoly R = pseudo_remainder(A, B);
    A = B;
    if (R.is_zero()) return 0;
    B = divide_exact(R, ZPoly::constant(g * pow(h, static_cast<unsigned long>(delta))));
    g = A.lead();
    // h <- h^(1-delta) g^delta
    BigInt num = pow(g, static_cast<unsigned long>(delta));
    if (delta == 0) {
      h = h * 1;  // h^1 g^0
    } else {
      BigInt den = pow(h, static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (B.degree() <= 0) break;
  }
  const unsigned long da = static_cast<unsigned long>(A.degree());
  BigInt num = pow(B.lead(), da);
  BigInt hh;
  if (da == 0) {
    hh = h;
  } else {
    BigInt den = pow(h, da - 1);
    mpz_divexact(hh.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  }
  return s * t * hh;
}

BigInt sylvester_resultant(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const std::size_t m = static_cast<std::size_t>(a.degree()), n = static_cast<std::size_t>(b.degree());
  const std::size_t sz = m + n;
  if (sz == 0) return 1;
  std::vector<std::vector<BigInt>> M(sz, std::vector<BigInt>(sz, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k <= m; ++k) M[i][i + k] = a.coeff(static_cast<unsigned long>(m - k));
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k <= n; ++k) M[n + i][i + k] = b.coeff(static_cast<unsigned long>(n - k));
  }
  // Bareiss fraction-free elimination.
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < sz; ++k) {
    if (M[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < sz && M[p][k] == 0) ++p;
      if (p == sz) return 0;
      std::swap(M[p], M[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < sz; ++i) {
      for (std::size_t j = k + 1; j < sz; ++j) {
        BigInt x = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        mpz_divexact(M[i][j].get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      M[i][k] = 0;
    }
    prev = M[k][k];
  }
  return sign * M[sz - 1][sz - 1];
}

namespace {

BigInt disc_from_res(const ZPoly& f, const BigInt& res) {
  const long d = f.degree();
  if (d < 1) throw DomainError("discriminant needs degree >= 1");
  BigInt out;
  mpz_divexact(out.get_mpz_t(), res.get_mpz_t(), f.lead().get_mpz_t());
  return ((d * (d - 1) / 2) % 2 == 0) ? out : BigInt(-out);
}

}  // namespace

BigInt discriminant(const ZPoly& f) { return disc_from_res(f, resultant(f, f.derivative())); }

BigInt discriminant_sylvester(const ZPoly& f) {
  return disc_from_res(f, sylvester_resultant(f, f.derivative()));
}

ZPoly gcd(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  ZPoly A = a.primitive(), B = b.primitive();
  if (A.degree() < B.degree()) std::swap(A, B);
  while (!B.is_zero()) {
    ZPoly R = pseudo_remainder(A, B);
    A = B;
    B = R.is_zero() ? R : R.primitive();
  }
  return A.primitive();
}

ZPoly squarefree_part(const ZPoly& f) {
  if (f.degree() < 1) return f.is_zero() ? f : ZPoly::constant(1);
  const ZPoly g = gcd(f, f.derivative());
  return divide_exact(f.primitive(), g).primitive();
}

}  // namespace expdio
