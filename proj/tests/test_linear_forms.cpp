#include <cmath>

#include "doctest.h"
#include "expdio/continued_fraction.hpp"
#include "expdio/laurent.hpp"

using namespace expdio;

namespace {

const BigInt kCMin("40000000005", 10);

// Left side of (III) recomputed in long double from the displayed formulas.
long double lhs_III_oracle(long double log_c, long double angle, const LaurentParams& p, unsigned long b1,
                           unsigned long b2) {
  const long double rho = p.rho.get_d(), mu = p.mu.get_d();
  const long double a1 = rho * angle + log_c, a2 = rho * M_PIl / 2;
  const long double R = p.R1 + p.R2 - 1, S = p.S1 + p.S2 - 1, N = static_cast<long double>(p.K * p.L);
  const long double g = 0.25L - N / (12 * R * S);
  const long double sigma = (1 + 2 * mu - mu * mu) / 2;
  long double log_superfact = 0;
  for (unsigned long k = 1; k < p.K; ++k) log_superfact += std::lgamma(static_cast<long double>(k) + 1);
  const long double log_b = std::log(((R - 1) * b2 + (S - 1) * b1) / 2) - 2 * log_superfact / (p.K * p.K - p.K);
  return p.K * (sigma * p.L - 1) * std::log(rho) - 2 * std::log(N) - (p.K - 1) * log_b - g * p.L * (R * a1 + S * a2);
}

long double cN_oracle(unsigned long N) {
  const long double n = N;
  return 2 / n * (std::lgamma(n + 1) + (1 - n) * std::log(n) + std::log(std::exp(n) + std::pow(std::exp(1.0L) - 1, n)));
}

}  // namespace

TEST_SUITE("linear-forms") {
  TEST_CASE("height is half log c") {
    const auto inst = build_form({BigInt(5), BigInt(2), BigInt(1)}, 3);
    CHECK(std::abs(inst.height.mid() - std::log(5.0) / 2) < 1e-15);
  }

  TEST_CASE("rotation brings the angle into [0, pi/4]") {
    for (auto [u, v] : {std::pair{6L, 7L}, std::pair{2L, 9L}, std::pair{2L, 1L}, std::pair{10L, 1L}}) {
      const auto inst = build_form({BigInt(u * u + v * v), BigInt(u), BigInt(v)}, 3);
      CHECK(inst.angle.upper() <= M_PI / 4 + 1e-30);
      // Oracle: distance of 2 atan(v/u) to the nearest multiple of pi/2.
      const double t = 2 * std::atan2(static_cast<double>(v), static_cast<double>(u));
      const double d = std::abs(t - std::round(t / (M_PI / 2)) * (M_PI / 2));
      CHECK(std::abs(inst.angle.mid() - d) < 1e-12);
    }
  }

  TEST_CASE("c(N) against lgamma") {
    for (unsigned long N : {1UL, 2UL, 10UL, 100UL, 5000UL}) {
      const Interval c = laurent_cN(N, 128);
      CHECK(std::abs(c.mid() - static_cast<double>(cN_oracle(N))) < 1e-9 * std::max(1.0, std::abs(c.mid())));
    }
  }

  TEST_CASE("recipe parameters and (III) at the published point") {
    const auto inst = regime_form(kCMin, 771);
    const auto p = recipe_params(inst, 8, make_rational(77, 10), make_rational(56, 100), make_rational(1166, 10000), 4, 2);
    const long double a1 = 7.7L * M_PIl / 4 + std::log(4e10L + 5), a2 = 7.7L * M_PIl / 2;
    CHECK(p.K == static_cast<unsigned long>(std::ceil(0.1166L * 8 * a1 * a2)));
    CHECK(p.R2 == static_cast<unsigned long>(std::ceil(std::sqrt(0.1166L) * 8 * a2)));
    CHECK(p.S2 == (1 + (p.K - 1) * 8 + p.R2 - 1) / p.R2);
    const auto v = laurent_verdict(inst, p, 771, std::nullopt);
    const long double oracle = lhs_III_oracle(std::log(4e10L + 5), M_PIl / 4, p, 771, 386);
    CHECK(std::abs(v.lhs_III.mid() - static_cast<double>(oracle)) < 1e-6);
    CHECK(v.cond_I);
    CHECK(v.lhs_III.lower() <= v.lhs_III.upper());
  }

  TEST_CASE("tiny K = 3, L = 2 fails (III)") {
    const auto inst = regime_form(kCMin, 771);
    LaurentParams p;
    p.K = 3;
    p.L = 2;
    p.R1 = 1;
    p.S1 = 2;
    p.R2 = 3;
    p.S2 = 2;
    p.rho = 8;
    p.mu = make_rational(1, 2);
    const auto v = laurent_verdict(inst, p, 771, std::nullopt);
    CHECK_FALSE(v.cond_III);
    CHECK(v.failed == "III");
    CHECK_FALSE(v.theta.has_value());
    CHECK(v.lhs_III.upper() < 0);
  }

  TEST_CASE("condition (I) with R1 S1 = L") {
    const auto inst = regime_form(kCMin, 771);
    const auto p = recipe_params(inst, 8, make_rational(77, 10), make_rational(56, 100), make_rational(1166, 10000), 4, 2);
    CHECK(laurent_verdict(inst, p, 771, std::nullopt).cond_I);
  }

  TEST_CASE("condition (II) by enumeration matches the definition") {
    const auto inst = regime_form(kCMin, 101);
    LaurentParams p;
    p.K = 5;
    p.L = 4;
    p.R1 = 2;
    p.S1 = 2;
    p.R2 = 4;
    p.S2 = 5;
    p.rho = 5;
    p.mu = make_rational(1, 2);
    // r * 3 + s * 101 over 4 x 5 is injective: 20 > (K - 1) L = 16
    CHECK(laurent_verdict(inst, p, 101, 3ul).cond_II);
    p.S2 = 4;  // 16 values, not enough
    CHECK_FALSE(laurent_verdict(inst, p, 101, 3ul).cond_II);
    CHECK_THROWS_AS(laurent_verdict(inst, p, 0, 3ul), DomainError);
  }

  TEST_CASE("search finds a certified bound and a one-point grid returns that point") {
    const auto inst = regime_form(kCMin, 1001);
    const SearchResult res = param_search(inst, 1001, SearchGrid::coarse());
    REQUIRE(res.found);
    REQUIRE(res.verdict.theta.has_value());
    CHECK(res.verdict.theta->upper() < 0.25);
    SearchGrid one;
    one.extra = {res.params};
    const SearchResult again = param_search(inst, 1001, one);
    REQUIRE(again.found);
    CHECK(again.params.K == res.params.K);
    CHECK(again.params.rho == res.params.rho);
    CHECK(again.verdict.theta->upper() == doctest::Approx(res.verdict.theta->upper()));
  }

  TEST_CASE("certified lower bounds never exceed the actual |Lambda|") {
    for (auto [u, v] : {std::pair{6L, 7L}, std::pair{2L, 999L}, std::pair{600L, 401L}, std::pair{2L, 1L}}) {
      const Representation rep{BigInt(u * u + v * v), BigInt(u), BigInt(v)};
      for (unsigned long r : {51UL, 99UL}) {
        const auto inst = build_form(rep, r);
        const SearchResult res = param_search(inst, r, SearchGrid::coarse());
        const Interval actual = lambda_value(rep, r);
        if (res.found) {
          CHECK(res.verdict.log_lambda_lower->upper() <= log(actual).lower());
        }
      }
    }
  }

  TEST_CASE("min{X, Y} bound for the witness (2, 11) from (2 + i)^3") {
    const Representation rep{BigInt(5), BigInt(2), BigInt(1)};
    const Interval lam = lambda_value(rep, 3);
    const auto b = min_xy_bound(interval_log(Rational(5), 128), 3, log(lam));
    CHECK(b.via_pi.upper() <= std::log(2.0));
    CHECK(b.via_clamp.upper() <= std::log(2.0));
  }

  TEST_CASE("min{X, Y} clamp branch") {
    const Interval ll = interval_log(make_rational(1, 100), 128);
    const auto b = min_xy_bound(interval_log(Rational(5), 128), 3, ll);
    const double expected = std::log(0.99) + 1.5 * std::log(5.0) + std::log(0.001);
    CHECK(b.via_clamp.mid() == doctest::Approx(expected).epsilon(1e-12));
    const auto plain = min_xy_bound(interval_log(Rational(5), 128), 3, interval_log(make_rational(1, 10000), 128));
    CHECK(plain.via_pi.mid() == doctest::Approx(1.5 * std::log(5.0) + std::log(1e-4) - std::log(M_PI)).epsilon(1e-12));
  }

  TEST_CASE("angle minimum bounds against direct evaluation") {
    for (auto [u, v, n_max] : {std::tuple{2L, 1L, 9UL}, std::tuple{6L, 7L, 983UL}, std::tuple{2L, 9L, 3UL}}) {
      const Representation rep{BigInt(u * u + v * v), BigInt(u), BigInt(v)};
      const AngleBound bound = angle_min_lower_bound(rep, n_max);
      Rational direct_min = -1;
      for (unsigned long n = 3; n <= n_max; n += 2) {
        const Rational lo = angle_distance(rep, n, 128).lower_rational();
        if (direct_min < 0 || lo < direct_min) direct_min = lo;
      }
      CHECK(bound.lower > 0);
      CHECK(bound.lower <= direct_min);
    }
  }

  TEST_CASE("continued fraction of a rational interval") {
    // 355/113 and 22/7 share the quotients 3, 7.
    const auto q = common_partial_quotients(make_rational(22, 7), make_rational(355, 113));
    REQUIRE(q.size() >= 1);
    CHECK(q[0] == 3);
    const auto conv = convergents({BigInt(3), BigInt(7), BigInt(15), BigInt(1)});
    CHECK(conv.back().p == 355);
    CHECK(conv.back().q == 113);
  }

  TEST_CASE("parity distances") {
    const Interval t = Interval::from_rational(make_rational(9, 4), 128);  // 2.25
    CHECK(dist_to_int(t).contains(make_rational(1, 4)));
    CHECK(dist_to_parity(t, false).contains(make_rational(1, 4)));
    CHECK(dist_to_parity(t, true).contains(make_rational(3, 4)));
  }
}
