#include "doctest.h"
#include "expdio/curves.hpp"

using namespace expdio;

namespace {

ZPoly poly(std::vector<long> c) {
  std::vector<BigInt> out;
  for (long x : c) out.emplace_back(x);
  return ZPoly(out);
}

// Value of a polynomial in lambda.
BigInt at(const ZPoly& p, long x) { return p.eval(BigInt(x)); }

}  // namespace

TEST_SUITE("curve-certificates") {
  TEST_CASE("b-side formula at y = 6") {
    // -lambda (216 lambda^2 - 32)^2
    const ZPoly expected = poly({-1024, 0, 13824, 0, -46656}) * poly({0, 1});
    CHECK(stickelberger_disc(TrinomialShape::b_side, 6).disc == expected);
  }

  TEST_CASE("c-side formula at z = 5, r = 3") {
    // lambda^2 (3125 lambda^2 - 108)
    CHECK(stickelberger_disc(TrinomialShape::c_side, 5, 3).disc == poly({0, 0, -108, 0, 3125}));
  }

  TEST_CASE("both shapes vanish at lambda = 0") {
    CHECK(at(stickelberger_disc(TrinomialShape::b_side, 10).disc, 0) == 0);
    CHECK(at(stickelberger_disc(TrinomialShape::c_side, 7, 3).disc, 0) == 0);
  }

  TEST_CASE("discriminant oracle on known values") {
    CHECK(disc_oracle(poly({1, 0, 1})) == -4);
    CHECK(disc_oracle(trinomial(6, 2, BigInt(1))) == -33856);
    CHECK(disc_oracle(trinomial(5, 3, BigInt(1))) == 3017);
  }

  TEST_CASE("subresultant and Sylvester discriminants agree") {
    for (unsigned long d = 3; d <= 9; ++d) {
      for (long lam : {-3L, 1L, 2L}) {
        const ZPoly f = trinomial(d, 2, BigInt(lam));
        CHECK(discriminant(f) == discriminant_sylvester(f));
      }
    }
    const ZPoly a = poly({1, 2, 3}), b = poly({-5, 0, 1, 4});
    CHECK(resultant(a, b) == sylvester_resultant(a, b));
  }

  TEST_CASE("formula equals oracle off the acceptance grid") {
    for (unsigned long y : {18UL}) {
      for (long lam : {-5L, 4L}) CHECK(at(stickelberger_disc(TrinomialShape::b_side, y).disc, lam) == disc_oracle(trinomial(y, 2, BigInt(lam))));
    }
    for (auto [z, r] : {std::pair{11UL, 3UL}, std::pair{11UL, 7UL}}) {
      for (long lam : {-5L, 4L}) CHECK(at(stickelberger_disc(TrinomialShape::c_side, z, r).disc, lam) == disc_oracle(trinomial(z, r, BigInt(lam))));
    }
  }

  TEST_CASE("polynomial gcd and squarefree part") {
    const ZPoly f = poly({-1, 1}) * poly({-1, 1}) * poly({2, 0, 1});  // (x-1)^2 (x^2+2)
    const ZPoly sf = squarefree_part(f);
    CHECK(sf.degree() == 3);
    CHECK(gcd(f, f.derivative()).degree() == 1);
    CHECK(divide_exact(f, poly({-1, 1})) == poly({-1, 1}) * poly({2, 0, 1}));
  }

  TEST_CASE("nonzero roots of D are double") {
    for (unsigned long y : {6UL, 10UL, 14UL}) {
      const ZPoly d = stickelberger_disc(TrinomialShape::b_side, y).disc;
      // squarefree part: lambda times a degree y/2 - 1 factor
      CHECK(squarefree_part(d).degree() == static_cast<long>(y / 2));
    }
  }

  TEST_CASE("y = 6, z = 5, r = 3 counts") {
    const auto c = dls_certify(6, 5, 3, DlsOrientation::b_as_f);
    CHECK(c.distinct_root_count == 3);
    CHECK(c.qualifying_count == 2);
    CHECK(c.qualifying_count <= c.distinct_root_count);
    CHECK(c.n == 6);
    CHECK(c.m == 5);
  }

  TEST_CASE("exception cases are never certified") {
    for (unsigned long y : {6UL, 10UL}) {
      for (auto [z, r] : {std::pair{5UL, 3UL}, std::pair{7UL, 5UL}, std::pair{9UL, 3UL}}) {
        for (auto o : {DlsOrientation::b_as_f, DlsOrientation::c_as_f}) {
          const auto c = dls_certify(y, z, r, o);
          if (c.m == 2 || (c.m == 3 && c.n == 3)) {
            CHECK(c.exception_case);
            CHECK(c.verdict == Verdict::inconclusive);
          }
        }
      }
    }
  }

  TEST_CASE("certificate carries both orientations") {
    const Certificate cert = dls_certificate(10, 7, 3);
    CHECK(cert.outputs["orientations"].size() == 2);
    CHECK(cert.claim == "dls-criterion");
  }
}
