#include "expdio/curves.hpp"

#include <numeric>

namespace expdio {

namespace {

// disc(x^n + a x^k + b) with a = -1, as a polynomial in b (general gcd form).
ZPoly trinomial_disc_in_b(unsigned long n, unsigned long k) {
  const unsigned long d = std::gcd(n, k);
  const BigInt nn = pow(BigInt(n), n / d);
  const BigInt kk = pow(BigInt(n - k), (n - k) / d) * pow(BigInt(k), k / d);
  // [n^(n/d) b^((n-k)/d) - (-1)^(n/d) (n-k)^((n-k)/d) k^(k/d) a^(n/d)]^d, a = -1
  const ZPoly inner = ZPoly::monomial(nn, (n - k) / d) - ZPoly::constant(kk);
  ZPoly out = ZPoly::monomial(1, k - 1) * pow(inner, d);
  if ((n * (n - 1) / 2) % 2 == 1) out = BigInt(-1) * out;
  return out;
}

}  // namespace

TrinomialDisc stickelberger_disc(TrinomialShape shape, unsigned long e1, unsigned long e2) {
  TrinomialDisc out;
  out.shape = shape;
  out.e1 = e1;
  if (shape == TrinomialShape::b_side) {
    if (e1 < 6 || e1 % 4 != 2) throw DomainError("b-side needs y = 2 mod 4, y >= 6");
    out.e2 = 2;
    // -lambda (y^(y/2) lambda^(y/2-1) - 2 (y-2)^(y/2-1))^2
    const unsigned long h = e1 / 2;
    const ZPoly inner = ZPoly::monomial(pow(BigInt(e1), h), h - 1) -
                        ZPoly::constant(2 * pow(BigInt(e1 - 2), h - 1));
    out.disc = ZPoly::monomial(-1, 1) * inner * inner;
  } else {
    if (!(e1 > e2 && e2 >= 3 && e1 % 2 == 1 && e2 % 2 == 1)) {
      throw DomainError("c-side needs z > r >= 3, both odd");
    }
    out.e2 = e2;
    if (std::gcd(e1, e2) == 1) {
      // (-1)^(z(z-1)/2) lambda^(r-1) (z^z lambda^(z-r) - (z-r)^(z-r) r^r)
      const ZPoly inner = ZPoly::monomial(pow(BigInt(e1), e1), e1 - e2) -
                          ZPoly::constant(pow(BigInt(e1 - e2), e1 - e2) * pow(BigInt(e2), e2));
      out.disc = ZPoly::monomial(((e1 * (e1 - 1) / 2) % 2 == 0) ? 1 : -1, e2 - 1) * inner;
    } else {
      out.disc = trinomial_disc_in_b(e1, e2);
    }
  }
  return out;
}

ZPoly trinomial(unsigned long e1, unsigned long e2, const BigInt& lambda) {
  return ZPoly::monomial(1, e1) - ZPoly::monomial(1, e2) + ZPoly::constant(lambda);
}

BigInt disc_oracle(const ZPoly& poly) {
  if (poly.degree() > 24) throw DomainError("disc_oracle limited to degree <= 24");
  return discriminant(poly);
}

DlsCertificate dls_certify(unsigned long y, unsigned long z, unsigned long r,
                           DlsOrientation orientation) {
  if (y < 6 || !(z > r && r >= 3)) throw DomainError("dls_certify needs y >= 6, z > r >= 3");
  const ZPoly Db = stickelberger_disc(TrinomialShape::b_side, y).disc;
  const ZPoly Dc = stickelberger_disc(TrinomialShape::c_side, z, r).disc;
  DlsCertificate out;
  out.y = y;
  out.z = z;
  out.r = r;
  out.orientation = orientation;
  const bool b_f = orientation == DlsOrientation::b_as_f;
  const ZPoly& D = b_f ? Db : Dc;
  const ZPoly& E = b_f ? Dc : Db;
  out.n = b_f ? y : z;
  out.m = b_f ? z : y;
  const ZPoly sq = squarefree_part(D);
  out.distinct_root_count = static_cast<unsigned long>(sq.degree());
  const ZPoly common = gcd(sq, E);
  out.qualifying_count = out.distinct_root_count - static_cast<unsigned long>(common.degree());
  out.exception_case = out.m == 2 || (out.m == 3 && out.n == 3);
  const bool meets = 2 * out.qualifying_count >= out.n;
  out.verdict = (meets && !out.exception_case) ? Verdict::pass : Verdict::inconclusive;
  return out;
}

Certificate dls_certificate(unsigned long y, unsigned long z, unsigned long r) {
  Certificate cert;
  cert.claim = "dls-criterion";
  cert.module = "curve-certificates";
  cert.inputs = {{"y", y}, {"z", z}, {"r", r}};
  Json orients = Json::array();
  bool any = false;
  for (auto o : {DlsOrientation::b_as_f, DlsOrientation::c_as_f}) {
    const DlsCertificate d = dls_certify(y, z, r, o);
    orients.push_back({{"orientation", o == DlsOrientation::b_as_f ? "b_as_f" : "c_as_f"},
                       {"n", d.n},
                       {"m", d.m},
                       {"distinct_root_count", d.distinct_root_count},
                       {"qualifying_count", d.qualifying_count},
                       {"exception_case", d.exception_case},
                       {"verdict", to_string(d.verdict)}});
    cert.step("squarefree-and-gcd", orients.back());
    any = any || d.verdict == Verdict::pass;
  }
  cert.outputs = {{"orientations", orients}};
  cert.verdict = any ? Verdict::pass : Verdict::inconclusive;
  return cert;
}

}  // namespace expdio
