#include <fstream>

#include "doctest.h"
#include "expdio/bounds.hpp"
#include "expdio/curves.hpp"
#include "expdio/lagrange_lucas.hpp"
#include "expdio/laurent.hpp"

using namespace expdio;

namespace {

std::vector<Certificate> sample_certificates() {
  std::vector<Certificate> out;
  out.push_back(prime_power_exclusion(PrimePowerTarget::a, {BigInt(5), BigInt(2), BigInt(1)}, 3));
  out.push_back(prime_power_exclusion(PrimePowerTarget::b, {BigInt(85), BigInt(2), BigInt(9)}, 5));
  out.push_back(prime_power_exclusion(PrimePowerTarget::c, {BigInt(125), BigInt(2), BigInt(11)}, 3));
  out.push_back(dls_certificate(6, 5, 3));
  const auto inst = regime_form(BigInt("40000000005", 10), 771);
  out.push_back(laurent_certificate(
      inst, recipe_params(inst, 8, make_rational(77, 10), make_rational(56, 100), make_rational(1166, 10000), 4, 2),
      771, std::nullopt));
  const auto skew = regime_form(BigInt("40000000005", 10), 1001, make_rational(1, 100));
  const auto found = param_search(skew, 1001, SearchGrid::coarse());
  REQUIRE(found.found);
  out.push_back(laurent_certificate(skew, found.params, 1001, std::nullopt));
  const auto rep = build_form({BigInt(85), BigInt(6), BigInt(7)}, 51);
  const auto found_rep = param_search(rep, 51, SearchGrid::coarse());
  if (found_rep.found) out.push_back(laurent_certificate(rep, found_rep.params, 51, 20ul));
  DerivationContext ctx;
  ctx.verdicts = published_verdicts();
  ctx.seeds = {hypothesis("c", Relation::gt, Rational(BigInt("40000000000", 10))), hypothesis("v", Relation::eq, 1)};
  for (const auto& ex : derive_all(ctx).certificates) out.push_back(to_certificate(ex, ctx));
  return out;
}

}  // namespace

TEST_SUITE("certificates") {
  TEST_CASE("every emitted certificate validates, round-trips and replays") {
    const auto certs = sample_certificates();
    CHECK(certs.size() >= 7);
    for (const auto& c : certs) {
      const Json j = to_json(c);
      CHECK_MESSAGE(validate_certificate(j).empty(), c.claim);
      const Certificate back = certificate_from_json(Json::parse(j.dump()));
      CHECK(to_json(back) == j);
      const ReplayResult r = replay(back);
      CHECK_MESSAGE(r.ok, c.claim << ": " << r.message);
    }
  }

  TEST_CASE("tampering is detected") {
    for (auto c : sample_certificates()) {
      c.verdict = c.verdict == Verdict::pass ? Verdict::fail : Verdict::pass;
      CHECK_FALSE(replay(c).ok);
    }
    Certificate dls = dls_certificate(6, 5, 3);
    dls.outputs["orientations"][0]["qualifying_count"] = 3;
    CHECK_FALSE(replay(dls).ok);
  }

  TEST_CASE("structural problems are reported") {
    Json j = to_json(dls_certificate(6, 5, 3));
    j.erase("trace");
    CHECK_FALSE(validate_certificate(j).empty());
    j = to_json(dls_certificate(6, 5, 3));
    j["verdict"] = "maybe";
    CHECK_FALSE(validate_certificate(j).empty());
    j = to_json(dls_certificate(6, 5, 3));
    j["extra"] = 1;
    CHECK_FALSE(validate_certificate(j).empty());
    CHECK_THROWS_AS(certificate_from_json(Json::array()), ConfigError);
    CHECK_THROWS_AS(verdict_from_string("maybe"), ConfigError);
    Certificate unknown;
    unknown.claim = "nothing";
    CHECK_FALSE(replay(unknown).ok);
  }

  TEST_CASE("shipped schema matches the validator") {
    std::ifstream in(std::string(EXPDIO_DATA_DIR) + "/../docs/certificate.schema.json");
    REQUIRE(in);
    const Json schema = Json::parse(in);
    std::vector<std::string> required = schema["required"];
    std::sort(required.begin(), required.end());
    std::vector<std::string> ours;
    for (const auto& [k, v] : to_json(dls_certificate(6, 5, 3)).items()) ours.push_back(k);
    std::sort(ours.begin(), ours.end());
    CHECK(required == ours);
    for (const auto& c : sample_certificates()) {
      const auto& claims = schema["properties"]["claim"]["enum"];
      CHECK(std::find(claims.begin(), claims.end(), c.claim) != claims.end());
    }
  }
}
