#include "expdio/certificate.hpp"

#include <set>

#include "expdio/bounds.hpp"
#include "expdio/curves.hpp"
#include "expdio/lagrange_lucas.hpp"
#include "expdio/laurent.hpp"
#include "expdio/sweep.hpp"

namespace expdio {

Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "inconclusive") return Verdict::inconclusive;
  throw ConfigError("unknown verdict '" + s + "'");
}

Json to_json(const Certificate& cert) {
  return {{"claim", cert.claim},           {"module", cert.module},   {"inputs", cert.inputs},
          {"parameters", cert.parameters}, {"outputs", cert.outputs}, {"verdict", to_string(cert.verdict)},
          {"assumptions", cert.assumptions}, {"trace", cert.trace}};
}

std::vector<std::string> validate_certificate(const Json& j) {
  std::vector<std::string> problems;
  if (!j.is_object()) return {"certificate is not an object"};
  static const std::set<std::string> keys = {"claim",   "module",  "inputs",      "parameters",
                                             "outputs", "verdict", "assumptions", "trace"};
  for (const auto& k : keys) {
    if (!j.contains(k)) problems.push_back("missing '" + k + "'");
  }
  for (const auto& [k, v] : j.items()) {
    if (!keys.count(k)) problems.push_back("unexpected '" + k + "'");
  }
  if (!problems.empty()) return problems;
  for (const char* k : {"claim", "module", "verdict"}) {
    if (!j[k].is_string() || j[k].get<std::string>().empty()) problems.push_back(std::string(k) + " must be a non-empty string");
  }
  for (const char* k : {"inputs", "parameters", "outputs"}) {
    if (!j[k].is_object()) problems.push_back(std::string(k) + " must be an object");
  }
  if (j["verdict"].is_string()) {
    const auto v = j["verdict"].get<std::string>();
    if (v != "pass" && v != "fail" && v != "inconclusive") problems.push_back("verdict must be pass, fail or inconclusive");
  }
  if (!j["assumptions"].is_array()) {
    problems.push_back("assumptions must be an array");
  } else {
    for (const auto& a : j["assumptions"]) {
      if (!a.is_string()) problems.push_back("assumptions entries must be strings");
    }
  }
  if (!j["trace"].is_array()) {
    problems.push_back("trace must be an array");
  } else {
    for (const auto& s : j["trace"]) {
      if (!s.is_object() || !s.contains("rule") || !s["rule"].is_string() || !s.contains("detail")) {
        problems.push_back("trace entries need 'rule' (string) and 'detail'");
        break;
      }
    }
  }
  return problems;
}

Certificate certificate_from_json(const Json& j) {
  const auto problems = validate_certificate(j);
  if (!problems.empty()) throw ConfigError("invalid certificate: " + problems.front());
  Certificate c;
  c.claim = j["claim"];
  c.module = j["module"];
  c.inputs = j["inputs"];
  c.parameters = j["parameters"];
  c.outputs = j["outputs"];
  c.verdict = verdict_from_string(j["verdict"]);
  c.assumptions = j["assumptions"].get<std::vector<std::string>>();
  c.trace = j["trace"];
  return c;
}

namespace {

ReplayResult compare(const Certificate& cert, const Certificate& again) {
  if (again.verdict != cert.verdict) {
    return {false, std::string("verdict differs: recorded ") + to_string(cert.verdict) + ", recomputed " +
                       to_string(again.verdict)};
  }
  if (again.outputs != cert.outputs) return {false, "outputs differ"};
  return {true, "outputs and verdict reproduced"};
}

Representation rep_from(const Json& in) {
  Representation rep{BigInt(in.at("c").get<std::string>(), 10), BigInt(in.at("u").get<std::string>(), 10),
                     BigInt(in.at("v").get<std::string>(), 10)};
  return rep;
}

Rational rational_from(const std::string& s) {
  Rational q(s, 10);
  q.canonicalize();
  return q;
}

ReplayResult replay_prime_power(const Certificate& cert) {
  const std::string w = cert.inputs.at("which");
  const PrimePowerTarget which = w == "a" ? PrimePowerTarget::a : w == "b" ? PrimePowerTarget::b : PrimePowerTarget::c;
  return compare(cert, prime_power_exclusion(which, rep_from(cert.inputs), cert.inputs.at("r")));
}

ReplayResult replay_laurent(const Certificate& cert) {
  const Json& in = cert.inputs;
  const unsigned long n = in.at("n");
  const Bits bits = in.value("bits", kStartBits);
  LinearFormInstance inst;
  if (in.contains("u")) {
    Representation rep{BigInt(in.at("c_min").get<std::string>(), 10), BigInt(in.at("u").get<std::string>(), 10),
                       BigInt(in.at("v").get<std::string>(), 10)};
    inst = build_form(rep, n, bits);
  } else {
    const std::string angle = in.at("angle");
    std::optional<Rational> ratio;
    const std::string prefix = "2 atan(";
    if (angle.rfind(prefix, 0) == 0) ratio = rational_from(angle.substr(prefix.size(), angle.size() - prefix.size() - 1));
    inst = regime_form(BigInt(in.at("c_min").get<std::string>(), 10), n, ratio, bits);
    if (inst.angle_source != angle) return {false, "angle regime could not be rebuilt"};
  }
  const Json& p = cert.parameters;
  LaurentParams params;
  params.K = p.at("K");
  params.L = p.at("L");
  params.R1 = p.at("R1");
  params.R2 = p.at("R2");
  params.S1 = p.at("S1");
  params.S2 = p.at("S2");
  params.rho = rational_from(p.at("rho"));
  params.mu = rational_from(p.at("mu"));
  params.m = rational_from(p.at("m"));
  LaurentOptions opt;
  opt.g_max = in.at("g_max");
  opt.start_bits = bits;
  opt.block_lo = in.value("block_lo", 0UL);
  std::optional<unsigned long> b2;
  if (!in.at("b2").is_null()) b2 = in.at("b2").get<unsigned long>();
  return compare(cert, laurent_certificate(inst, params, in.at("b1"), b2, opt));
}

ReplayResult replay_exclusion_claim(const Certificate& cert) {
  DerivationContext ctx;
  for (const auto& h : cert.inputs.at("hypotheses")) {
    const std::string rel = h.at("relation");
    Relation r = Relation::eq;
    bool found = false;
    for (Relation cand : {Relation::lt, Relation::le, Relation::gt, Relation::ge, Relation::eq, Relation::congruent}) {
      if (to_string(cand) == rel) {
        r = cand;
        found = true;
      }
    }
    if (!found) return {false, "unknown relation '" + rel + "'"};
    ctx.seeds.push_back(hypothesis(h.at("subject"), r, rational_from(h.at("value")),
                                   BigInt(h.at("modulus").get<std::string>(), 10)));
  }
  for (const auto& row : cert.parameters.at("verdicts")) {
    ctx.verdicts.push_back({row.at("table"), row.at("y_floor"), row.at("r_max"), row.at("z_max"),
                            row.at("source") == "published" ? VerdictSource::published : VerdictSource::computed});
  }
  const DerivationResult res = derive_all(ctx);
  const std::string target = cert.outputs.at("contradiction");
  for (const auto& ex : res.certificates) {
    if (ex.contradiction == target) {
      return compare(cert, to_certificate(ex, ctx));
    }
  }
  return {false, "contradiction not re-derived from the recorded hypotheses"};
}

ReplayResult replay_shard(const Certificate& cert) {
  Json cfg = cert.parameters;
  const SweepConfig config = SweepConfig::from_json(cfg);
  const SweepWorker worker(config, nullptr);
  const SweepShard shard = worker.run_shard(cert.inputs.at("lo"), cert.inputs.at("hi"));
  return compare(cert, shard_certificate(config, shard));
}

}  // namespace

ReplayResult replay(const Certificate& cert) {
  try {
    if (cert.claim == "prime-power-exclusion") return replay_prime_power(cert);
    if (cert.claim == "dls-criterion") {
      return compare(cert, dls_certificate(cert.inputs.at("y"), cert.inputs.at("z"), cert.inputs.at("r")));
    }
    if (cert.claim == "laurent-verdict") return replay_laurent(cert);
    if (cert.claim == "exclusion") return replay_exclusion_claim(cert);
    if (cert.claim == "sweep-shard") return replay_shard(cert);
  } catch (const nlohmann::json::exception& e) {
    return {false, std::string("malformed certificate: ") + e.what()};
  } catch (const Error& e) {
    return {false, std::string("replay raised: ") + e.what()};
  }
  return {false, "no replay for claim '" + cert.claim + "'"};
}

}  // namespace expdio
