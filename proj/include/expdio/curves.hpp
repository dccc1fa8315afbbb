#pragma once

#include "expdio/certificate.hpp"
#include "expdio/polynomial.hpp"

namespace expdio {

enum class TrinomialShape { b_side, c_side };

/// disc(T + lambda) as a polynomial in lambda, where T = X^y - X^2 (b-side,
/// params = {y}) or T = X^z - X^r (c-side, params = {z, r}).
struct TrinomialDisc {
  TrinomialShape shape = TrinomialShape::b_side;
  unsigned long e1 = 0;  // y or z
  unsigned long e2 = 0;  // 2 or r
  ZPoly disc;
};

TrinomialDisc stickelberger_disc(TrinomialShape shape, unsigned long e1, unsigned long e2 = 2);

/// X^e1 - X^e2 + lambda as a polynomial in X.
ZPoly trinomial(unsigned long e1, unsigned long e2, const BigInt& lambda);

/// Discriminant via subresultants.
BigInt disc_oracle(const ZPoly& poly);

enum class DlsOrientation {
  b_as_f,  // f = X^y - X^2, g = X^z - X^r
  c_as_f,  // f = X^z - X^r, g = X^y - X^2
};

struct DlsCertificate {
  unsigned long y = 0, z = 0, r = 0;
  DlsOrientation orientation = DlsOrientation::b_as_f;
  unsigned long n = 0;  // degree of f
  unsigned long m = 0;  // degree of g
  unsigned long distinct_root_count = 0;
  unsigned long qualifying_count = 0;
  bool exception_case = false;
  // pass = irreducible with positive genus; inconclusive otherwise.
  Verdict verdict = Verdict::inconclusive;
};

DlsCertificate dls_certify(unsigned long y, unsigned long z, unsigned long r,
                           DlsOrientation orientation);

/// Both orientations, as a serializable certificate.
Certificate dls_certificate(unsigned long y, unsigned long z, unsigned long r);

}  // namespace expdio
