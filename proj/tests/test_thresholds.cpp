#include <cmath>

#include "doctest.h"
#include "expdio/thresholds.hpp"

using namespace expdio;

namespace {

const BigInt kCMin("40000000005", 10);

ThresholdScenario baseline(unsigned long y, const BigInt& c_min = kCMin) {
  ThresholdScenario sc;
  sc.name = "baseline";
  sc.c_min = c_min;
  sc.y_floor = y;
  return sc;
}

}  // namespace

TEST_SUITE("thresholds") {
  TEST_CASE("published rows are transcribed") {
    const auto& rows = published_rows();
    auto find = [&](const std::string& t, unsigned long y) {
      for (const auto& r : rows) {
        if (r.table == t && r.y_floor == y) return r;
      }
      FAIL("missing row " << t << " " << y);
      return PublishedRow{};
    };
    CHECK(find("baseline", 6).r_max == 769);
    CHECK(find("baseline", 6).z_max == 983);
    CHECK(find("baseline", 602).r_max == 263);
    CHECK(find("skewed-z", 6).z_max == 845);
    CHECK(find("b-large", 142).r_max == 1);
    CHECK(find("t-one", 102).r_max == 1);
    CHECK(find("c-power-of-3", 602).z_max == 319);
  }

  TEST_CASE("c-power-of-3 rows use the larger c floor") {
    for (const auto& r : published_rows()) {
      if (r.table != "c-power-of-3") continue;
      const auto sc = scenario_for(r);
      CHECK(sc.c_min >= pow(BigInt(3), r.y_floor - 10));
      CHECK(sc.c_min >= kCMin);
    }
  }

  TEST_CASE("mu from theta") {
    const Bits bits = 128;
    const Interval log_c = interval_log(Rational(kCMin), bits);
    for (auto [theta, n] : {std::pair{0.2L, 1001UL}, std::pair{0.01L, 100001UL}}) {
      const auto mu = mu_from_theta(Interval::from_double(static_cast<double>(theta), bits), n, log_c);
      REQUIRE(mu.has_value());
      const long double L = n * std::log(4e10L + 5);
      const long double inv = 0.5L + std::min(-theta, -std::log(1000.0L) / L) + std::log(0.99L) / L;
      CHECK(mu->get_d() >= static_cast<double>(1 / inv) - 1e-12);
      CHECK(mu->get_d() <= static_cast<double>(1 / inv) + 1e-6);
    }
    // theta >= 1/2 leaves no bound.
    CHECK_FALSE(mu_from_theta(Interval::from_double(0.6, bits), 1001, log_c).has_value());
  }

  TEST_CASE("curve blocks certify every point inside") {
    ExponentCurve curve(kCMin, std::nullopt);
    const CurveBlock& blk = curve.block(3001, 3101);
    REQUIRE(blk.found);
    REQUIRE(blk.mu.has_value());
    const CurveBlock& pt = curve.point(3001);
    REQUIRE(pt.mu.has_value());
    CHECK(*pt.mu <= *blk.mu);  // the block bound is the weaker one
  }

  TEST_CASE("exponent_threshold agrees with the scenario run") {
    const auto res = exponent_thresholds(baseline(22));
    CHECK(exponent_threshold(kCMin, ThresholdTarget::r_bound, 22) == res.r_max);
    CHECK(exponent_threshold(kCMin, ThresholdTarget::z_bound, 22) == res.z_max);
    CHECK(res.r_max % 2 == 1);
    CHECK(res.z_max % 2 == 1);
    CHECK(res.z_max > res.r_max);
  }

  TEST_CASE("thresholds are non-increasing in the y floor") {
    unsigned long last_r = ~0UL, last_z = ~0UL;
    for (unsigned long y : {6UL, 10UL, 14UL, 18UL, 22UL, 602UL}) {
      const auto res = exponent_thresholds(baseline(y));
      CHECK(res.r_max <= last_r);
      CHECK(res.z_max <= last_z);
      last_r = res.r_max;
      last_z = res.z_max;
    }
  }

  TEST_CASE("b-large rows use b >= c^((r-1)/2)") {
    ThresholdScenario sc = baseline(142);
    sc.name = "b-large";
    sc.mode = ThresholdMode::b_large;
    const auto res = exponent_thresholds(sc);
    CHECK(res.r_max <= 263);
  }

  TEST_CASE("thresholds are non-increasing in c") {
    unsigned long last_r = ~0UL, last_z = ~0UL;
    for (const char* c : {"40000000005", "100000000000", "1000000000000"}) {
      const auto res = exponent_thresholds(baseline(6, BigInt(c, 10)));
      CHECK(res.r_max <= last_r);
      CHECK(res.z_max <= last_z);
      last_r = res.r_max;
      last_z = res.z_max;
    }
  }
}
