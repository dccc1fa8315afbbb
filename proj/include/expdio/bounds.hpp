#pragma once

#include <optional>
#include <string>
#include <vector>

#include "expdio/bigint.hpp"
#include "expdio/certificate.hpp"
#include "expdio/interval.hpp"
#include "expdio/representations.hpp"

namespace expdio {

enum class Relation { lt, le, gt, ge, eq, congruent };
enum class Provenance { hypothesis, derived, external_assumption };

std::string to_string(Relation r);
std::string to_string(Provenance p);

struct BoundFact {
  std::string subject;  // a, b, c, r, y, z, u, v, u1, v1, t, lambda', ratio, ratio1, ...
  Relation relation = Relation::le;
  Rational value;
  BigInt modulus = 0;   // congruent only
  std::string rule;
  std::vector<std::string> inputs;  // keys of the facts this one was derived from
  Provenance provenance = Provenance::derived;
  std::string note;
  std::optional<std::pair<std::string, std::string>> enclosure;  // certified interval behind value

  std::string key() const;
};

BoundFact hypothesis(std::string subject, Relation rel, Rational value, BigInt modulus = 0);

struct RuleOutcome {
  bool rejected = false;  // the candidate violates the rule
  std::string reason;
  std::vector<BoundFact> facts;
};

/// x = 2, y >= 6, y = 2 mod 4, z odd.
RuleOutcome rule_parity(unsigned long y, unsigned long z);
/// a >= c^(z/mu1) gives 2z < mu1 r; b >= c^(r/mu2) gives yr < mu2 z; mu1 mu2 <= 2y is contradictory.
RuleOutcome rule_exponent_exclusion(const Rational& mu1, const Rational& mu2, unsigned long y);
/// b >= v always; b >= v c^((r-1)/2) when (r+1) v < pi u is certified.
RuleOutcome rule_b_from_v(const Representation& rep, unsigned long r);
/// b >= (pi/(r+1)) (1 + pi^2/(r+1)^2)^(-1/2) sqrt(c) and y < z (2 + kappa/log b), kappa = log(1+(r+1)^2/pi^2).
RuleOutcome rule_y_over_z(unsigned long r_max, const BigInt& c_min);
Interval kappa(unsigned long r_plus_1, Bits bits = kStartBits);
/// Lower bound for lambda' with a = b^((y - lambda')/2), slack re-derived from log(1 - c^-2).
RuleOutcome rule_lambda_prime(const BigInt& c, const BigInt& b, unsigned long r, unsigned long z);
/// v = 1: congruence chain and u^2 + r^2 <= r(r-1)y/2 + z < r^2 y / 2.
RuleOutcome rule_v_one(const Representation& rep, unsigned long r, unsigned long y, unsigned long z);
/// Congruence chain check on an explicit (a, b, c) with c = u^2 + 1.
bool v_one_congruences(const BigInt& u, unsigned long r, const BigInt& a, const BigInt& b);
/// Ratio floor pi/(2(z_max+1)) and min{u1, v1} >= ratio sqrt(c/(1+ratio^2)).
RuleOutcome rule_ratio_floor(unsigned long z_max, const BigInt& c_min, const std::string& which);
/// ry/2 = z + 2t with t >= 1; t = 1 branch flagged.
RuleOutcome rule_t_relation(unsigned long r, unsigned long y, unsigned long z);
/// c > 3^(y-10), c > 2.1716^y, a > 4.608 b, b > 2.171^z, y < 2z + 12.5.
RuleOutcome rule_three_adic(unsigned long y, unsigned long z_max_for_y34, unsigned long r_max_y22);
/// External theorems as filters on one (y, z, r) candidate.
RuleOutcome rule_external_filters(unsigned long y, unsigned long z, unsigned long r);
const std::vector<unsigned long>& chen_exceptional_y();

enum class VerdictSource { computed, published };

struct VerdictRow {
  std::string table;  // baseline, skewed-z, skewed-r, b-large, t-one, c-power-of-3
  unsigned long y_floor = 0;
  unsigned long r_max = 0;  // 1: no solution
  unsigned long z_max = 0;  // 0: not bounded
  VerdictSource source = VerdictSource::published;
};

std::vector<VerdictRow> published_verdicts();
std::vector<VerdictRow> computed_verdicts(const std::vector<std::string>& tables = {"baseline"});

struct ExclusionCertificate {
  std::vector<std::string> hypotheses;
  std::string contradiction;
  std::vector<std::string> trace;
  std::vector<std::string> assumptions;
};

struct DerivationContext {
  std::vector<BoundFact> seeds;
  std::vector<VerdictRow> verdicts;
};

struct DerivationResult {
  std::vector<BoundFact> facts;  // sorted by key
  std::vector<ExclusionCertificate> certificates;
  unsigned rounds = 0;

  std::optional<Rational> upper(const std::string& subject) const;  // best <= bound
  std::optional<Rational> lower(const std::string& subject) const;  // best >= bound
  bool has(const std::string& key) const;
};

/// Forward chaining to a fixed point. rule_order permutes the rule list (tests).
DerivationResult derive_all(const DerivationContext& ctx, const std::vector<std::size_t>& rule_order = {});
std::size_t rule_count();

Certificate to_certificate(const ExclusionCertificate& ex, const DerivationContext& ctx);
/// Re-runs the derivation from the hypotheses and checks the same contradiction.
bool replay_exclusion(const ExclusionCertificate& ex, const DerivationContext& ctx);

struct ConstantCheck {
  std::string name;
  std::string printed;
  Interval value;
  std::string derivation;
  bool ok = false;
};

/// Certified re-derivation of the printed constants.
std::vector<ConstantCheck> constant_rederivations(const std::vector<VerdictRow>& verdicts);

}  // namespace expdio
