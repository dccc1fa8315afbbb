#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "expdio/bounds.hpp"

using namespace expdio;

namespace {

DerivationContext base_context() {
  DerivationContext ctx;
  ctx.verdicts = published_verdicts();
  ctx.seeds.push_back(hypothesis("c", Relation::gt, Rational(BigInt("40000000000", 10))));
  return ctx;
}

std::vector<std::string> keys(const DerivationResult& r) {
  std::vector<std::string> out;
  for (const auto& f : r.facts) out.push_back(f.key() + "|" + f.rule + "|" + f.note);
  return out;
}

}  // namespace

TEST_SUITE("bounds-engine") {
  TEST_CASE("parity rule") {
    CHECK_FALSE(rule_parity(6, 5).rejected);
    CHECK(rule_parity(4, 5).rejected);
    CHECK(rule_parity(8, 5).rejected);
    CHECK(rule_parity(10, 4).rejected);
  }

  TEST_CASE("exponent exclusion") {
    CHECK(rule_exponent_exclusion(Rational(3), Rational(4), 6).rejected);   // 12 <= 12
    CHECK_FALSE(rule_exponent_exclusion(Rational(4), Rational(4), 6).rejected);
    CHECK_THROWS_AS(rule_exponent_exclusion(Rational(0), Rational(4), 6), DomainError);
  }

  TEST_CASE("b from v") {
    const Representation small_v{BigInt(10001), BigInt(100), BigInt(1)};  // u even, v odd
    auto out = rule_b_from_v(small_v, 3);
    // 4 * 1 < pi * 100: b >= v c
    CHECK(std::any_of(out.facts.begin(), out.facts.end(), [](const BoundFact& f) { return f.value == 10001; }));
    const Representation big_v{BigInt(10201), BigInt(20), BigInt(99)};
    out = rule_b_from_v(big_v, 3);
    CHECK(out.facts.size() == 1);
    // Oracle: b from the witness really is >= v c^((r-1)/2) when the rule fires.
    const SolutionWitness w = witness_from(small_v, 3);
    CHECK(w.b >= 10001);
  }

  TEST_CASE("kappa") {
    CHECK(kappa(462).mid() == doctest::Approx(std::log1p(462.0 * 462.0 / (M_PI * M_PI))).epsilon(1e-14));
  }

  TEST_CASE("v = 1 congruence chain on real witnesses") {
    for (long u : {2L, 4L, 10L, 36L}) {
      const Representation rep{BigInt(u * u + 1), BigInt(u), BigInt(1)};
      for (unsigned long r : {3UL, 5UL, 7UL, 11UL}) {
        const SolutionWitness w = witness_from(rep, r);
        CHECK(v_one_congruences(rep.u, r, w.a, w.b));
        CHECK_FALSE(v_one_congruences(rep.u, r, w.a + 1, w.b));
      }
    }
  }

  TEST_CASE("v = 1 size bound") {
    const Representation rep{BigInt(101), BigInt(10), BigInt(1)};
    CHECK(rule_v_one(rep, 3, 6, 7).rejected);       // 109 > 3*2*3 + 7 = 25
    CHECK_FALSE(rule_v_one({BigInt(5), BigInt(2), BigInt(1)}, 3, 6, 7).rejected);  // 13 <= 25
    CHECK(rule_v_one({BigInt(85), BigInt(2), BigInt(9)}, 3, 6, 7).reason == "inapplicable: v != 1");
  }

  TEST_CASE("t relation") {
    const auto out = rule_t_relation(3, 6, 7);  // ry/2 = 9 = 7 + 2
    CHECK_FALSE(out.rejected);
    CHECK(out.reason == "t = 1 branch eligible");
    CHECK(rule_t_relation(3, 6, 9).rejected);
    CHECK(rule_t_relation(4, 6, 7).rejected);
  }

  TEST_CASE("ratio floor matches pi/(2(z+1))") {
    const auto out = rule_ratio_floor(845, BigInt("40000000005", 10), "ratio1");
    REQUIRE_FALSE(out.facts.empty());
    CHECK(out.facts[0].value.get_d() == doctest::Approx(M_PI / 1692).epsilon(1e-11));
    CHECK(out.facts[0].value.get_d() <= M_PI / 1692);
  }

  TEST_CASE("external filters") {
    CHECK(rule_external_filters(6, 9, 3).rejected);     // r | z and gcd(3, 3) > 1
    CHECK(rule_external_filters(10, 5, 3).rejected);    // gcd(10, 5) = 5 > 3
    CHECK_FALSE(rule_external_filters(6, 5, 3).rejected);
    CHECK_FALSE(rule_external_filters(14, 3, 0).rejected);  // 7 is not > 7
    CHECK(rule_external_filters(26, 3, 0).rejected);        // 13 | 26
    CHECK(chen_exceptional_y().size() == 29);
  }

  TEST_CASE("derivation from the published table") {
    const auto res = derive_all(base_context());
    CHECK(res.upper("r") == 769);
    CHECK(res.upper("z") == 983);
    CHECK(res.upper("y") == 634);
    CHECK(res.lower("c") == BigInt("40000000005", 10));
    CHECK(res.certificates.empty());
    for (const auto& f : res.facts) CHECK_FALSE(f.rule.empty());
  }

  TEST_CASE("y >= 602 tightens r and z") {
    auto ctx = base_context();
    ctx.seeds.push_back(hypothesis("y", Relation::ge, 602));
    const auto res = derive_all(ctx);
    CHECK(res.upper("r") == 149);
    CHECK(res.upper("z") == 319);
  }

  TEST_CASE("v = 1 is excluded and the certificate replays") {
    auto ctx = base_context();
    ctx.seeds.push_back(hypothesis("v", Relation::eq, 1));
    const auto res = derive_all(ctx);
    REQUIRE(res.certificates.size() == 1);
    CHECK(replay_exclusion(res.certificates[0], ctx));
    const Certificate cert = to_certificate(res.certificates[0], ctx);
    CHECK(cert.claim == "exclusion");
    CHECK(cert.verdict == Verdict::pass);
  }

  TEST_CASE("no seeds, no facts") {
    DerivationContext ctx;
    ctx.verdicts = published_verdicts();
    CHECK(derive_all(ctx).facts.empty());
  }

  TEST_CASE("rule order does not change the result") {
    const auto ctx = base_context();
    const auto reference = keys(derive_all(ctx));
    std::vector<std::size_t> order(rule_count());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937 rng(41);
    for (int i = 0; i < 5; ++i) {
      std::shuffle(order.begin(), order.end(), rng);
      CHECK(keys(derive_all(ctx, order)) == reference);
    }
  }

  TEST_CASE("printed constants") {
    const auto checks = constant_rederivations(published_verdicts());
    CHECK(checks.size() == 9);
    for (const auto& c : checks) CHECK_MESSAGE(c.ok, c.name << " " << c.value.str());
    // Independent double evaluations.
    auto val = [&](const std::string& name) {
      for (const auto& c : checks) {
        if (c.printed == name) return c.value.mid();
      }
      return -1.0;
    };
    CHECK(val("9.982") == doctest::Approx(std::log1p(462.0 * 462 / (M_PI * M_PI))));
    CHECK(val("8.863") == doctest::Approx(std::log1p(264.0 * 264 / (M_PI * M_PI))));
    CHECK(val("2.1716") == doctest::Approx(std::pow(3.0, 12.0 / 17)));
    CHECK(val("0.001856") == doctest::Approx(M_PI / 1692));
  }
}
