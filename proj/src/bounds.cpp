#include "expdio/bounds.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "expdio/thresholds.hpp"

namespace expdio {

std::string to_string(Relation r) {
  switch (r) {
    case Relation::lt: return "<";
    case Relation::le: return "<=";
    case Relation::gt: return ">";
    case Relation::ge: return ">=";
    case Relation::eq: return "=";
    case Relation::congruent: return "==";
  }
  return "?";
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::hypothesis: return "hypothesis";
    case Provenance::derived: return "derived";
    case Provenance::external_assumption: return "external-assumption";
  }
  return "?";
}

std::string BoundFact::key() const {
  std::string k = subject + to_string(relation) + value.get_str();
  if (relation == Relation::congruent) k += " mod " + modulus.get_str();
  return k;
}

BoundFact hypothesis(std::string subject, Relation rel, Rational value, BigInt modulus) {
  BoundFact f;
  f.subject = std::move(subject);
  f.relation = rel;
  f.value = std::move(value);
  f.modulus = std::move(modulus);
  f.rule = "seed";
  f.provenance = Provenance::hypothesis;
  return f;
}

namespace {

constexpr Bits kBits = 192;

BoundFact fact(std::string subject, Relation rel, Rational value, std::string rule,
               std::vector<std::string> inputs = {}, Provenance prov = Provenance::derived) {
  BoundFact f;
  f.subject = std::move(subject);
  f.relation = rel;
  f.value = std::move(value);
  f.rule = std::move(rule);
  f.inputs = std::move(inputs);
  f.provenance = prov;
  return f;
}

BoundFact congruence(std::string subject, long residue, long modulus, std::string rule,
                     std::vector<std::string> inputs = {}) {
  BoundFact f = fact(std::move(subject), Relation::congruent, Rational(residue), std::move(rule), std::move(inputs));
  f.modulus = modulus;
  return f;
}

void attach(BoundFact& f, const Interval& x) { f.enclosure = std::make_pair(x.lower_rational().get_str(), x.upper_rational().get_str()); }

Interval pi_() { return Interval::pi(kBits); }

// Decimal roundings that keep the fact sound and its key readable.
Rational up12(const Interval& x) { return make_rational(ceil(x.upper_rational() * BigInt("1000000000000")), BigInt("1000000000000")); }
Rational down12(const Interval& x) { return make_rational(floor(x.lower_rational() * BigInt("1000000000000")), BigInt("1000000000000")); }

}  // namespace

RuleOutcome rule_parity(unsigned long y, unsigned long z) {
  RuleOutcome out;
  if (y < 6) {
    out.rejected = true;
    out.reason = "y >= 6 violated";
  } else if (y % 4 != 2) {
    out.rejected = true;
    out.reason = "y = 2 mod 4 violated";
  } else if (z % 2 == 0) {
    out.rejected = true;
    out.reason = "z odd violated";
  }
  out.facts.push_back(fact("x", Relation::eq, 2, "parity"));
  out.facts.push_back(fact("y", Relation::ge, 6, "parity"));
  out.facts.push_back(congruence("y", 2, 4, "parity"));
  out.facts.push_back(congruence("z", 1, 2, "parity"));
  return out;
}

RuleOutcome rule_exponent_exclusion(const Rational& mu1, const Rational& mu2, unsigned long y) {
  if (mu1 <= 0 || mu2 <= 0) throw DomainError("mu1, mu2 > 0 required");
  RuleOutcome out;
  // a >= c^(z/mu1): 2z < mu1 r.  b >= c^(r/mu2): y r < mu2 z.
  out.facts.push_back(fact("z/r", Relation::lt, mu1 / 2, "exponent-exclusion-a"));
  out.facts.push_back(fact("z/r", Relation::gt, Rational(static_cast<long>(y)) / mu2, "exponent-exclusion-b"));
  if (mu1 * mu2 <= Rational(2 * static_cast<long>(y))) {
    out.rejected = true;
    out.reason = "mu1 mu2 <= 2y: both lower bounds cannot hold";
  }
  return out;
}

RuleOutcome rule_b_from_v(const Representation& rep, unsigned long r) {
  if (!rep.valid() || r < 3 || r % 2 == 0) throw DomainError("rule_b_from_v needs a valid representation and odd r >= 3");
  RuleOutcome out;
  out.facts.push_back(fact("b", Relation::ge, Rational(rep.v), "b-from-v"));
  const auto decide = [&](Bits bits) -> std::optional<bool> {
    const Interval lhs = Interval::from_big(rep.v, bits) * static_cast<long>(r + 1);
    const Interval rhs = Interval::pi(bits) * Interval::from_big(rep.u, bits);
    if (lhs.certainly_lt(rhs)) return true;
    if (lhs.certainly_ge(rhs)) return false;
    return std::nullopt;
  };
  if (with_adaptive_precision(decide, "(r+1) v < pi u")) {
    const BigInt lb = rep.v * pow(rep.c, (r - 1) / 2);
    out.facts.push_back(fact("b", Relation::ge, Rational(lb), "b-from-v"));
    out.reason = "(r+1) v < pi u";
  } else {
    out.reason = "(r+1) v >= pi u: only b >= v";
  }
  return out;
}

Interval kappa(unsigned long r_plus_1, Bits bits) {
  const Interval q = Interval::from_int(static_cast<long>(r_plus_1), bits) / Interval::pi(bits);
  return log(q * q + 1);
}

RuleOutcome rule_y_over_z(unsigned long r_max, const BigInt& c_min) {
  RuleOutcome out;
  const Interval rp = Interval::from_int(static_cast<long>(r_max + 1), kBits);
  const Interval t = pi_() / rp;
  const Interval b_lo = t / sqrt(t * t + 1) * sqrt(Interval::from_big(c_min, kBits));
  BoundFact fb = fact("b", Relation::ge, down12(b_lo), "y-over-z");
  attach(fb, b_lo);
  out.facts.push_back(fb);
  const Interval k = kappa(r_max + 1, kBits);
  BoundFact fk = fact("kappa", Relation::le, up12(k), "y-over-z");
  fk.note = "y < z (2 + kappa / log b)";
  attach(fk, k);
  out.facts.push_back(fk);
  return out;
}

RuleOutcome rule_lambda_prime(const BigInt& c, const BigInt& b, unsigned long r, unsigned long z) {
  RuleOutcome out;
  if (z < r + 2) {
    out.rejected = true;
    out.reason = "z >= r + 2 required";
    return out;
  }
  if (b < 2 || c < 2) throw DomainError("b, c >= 2 required");
  const Interval logc = interval_log(Rational(c), kBits);
  const Interval logb = interval_log(Rational(b), kBits);
  // delta = -log(1 - c^-2) / log c: slack from c^z (1 - c^(r-z)) < b^y.
  const Interval cinv2 = Interval::from_int(1, kBits) / pow(Interval::from_big(c, kBits), 2);
  const Interval delta = -log(-cinv2 + 1) / logc;
  BoundFact fd = fact("delta", Relation::le, delta.upper_rational(), "lambda-prime");
  attach(fd, delta);
  out.facts.push_back(fd);
  const Interval lp = logc / logb * (Interval::from_int(static_cast<long>(z - r), kBits) - delta);
  BoundFact f1 = fact("lambda'", Relation::gt, down12(lp), "lambda-prime");
  attach(f1, lp);
  out.facts.push_back(f1);
  const Interval lp2 = (-delta + 2) * 2 / static_cast<long>(r);
  BoundFact f2 = fact("lambda'", Relation::gt, down12(lp2), "lambda-prime");
  f2.note = "uses b < c^(r/2)";
  attach(f2, lp2);
  out.facts.push_back(f2);
  return out;
}

bool v_one_congruences(const BigInt& u, unsigned long r, const BigInt& a, const BigInt& b) {
  const BigInt u3 = u * u * u, u4 = u3 * u;
  auto mod = [](const BigInt& x, const BigInt& m) {
    BigInt t = x % m;
    if (t < 0) t += m;
    return t;
  };
  const BigInt ru = BigInt(static_cast<unsigned long>(r)) * u;
  const bool a_ok = mod(a - ru, u3) == 0 || mod(a + ru, u3) == 0;
  const BigInt binom = BigInt(static_cast<unsigned long>(r * (r - 1) / 2));
  const BigInt e = 1 - binom * u * u;
  const bool b_ok = mod(b - e, u4) == 0 || mod(b + e, u4) == 0;
  return a_ok && b_ok;
}

RuleOutcome rule_v_one(const Representation& rep, unsigned long r, unsigned long y, unsigned long z) {
  RuleOutcome out;
  if (rep.v != 1) {
    out.reason = "inapplicable: v != 1";
    return out;
  }
  const BigInt u2 = rep.u * rep.u;
  const BigInt R = static_cast<unsigned long>(r);
  const BigInt mid = R * (R - 1) * static_cast<unsigned long>(y) / 2 + static_cast<unsigned long>(z);
  const BigInt top = R * R * static_cast<unsigned long>(y) / 2;
  out.facts.push_back(fact("u^2+r^2", Relation::le, Rational(mid), "v-one"));
  out.facts.push_back(fact("u^2+r^2", Relation::lt, Rational(top), "v-one"));
  if (u2 + R * R > mid || u2 + R * R >= top) {
    out.rejected = true;
    out.reason = "u^2 + r^2 exceeds r(r-1)y/2 + z";
  }
  return out;
}

RuleOutcome rule_ratio_floor(unsigned long z_max, const BigInt& c_min, const std::string& which) {
  RuleOutcome out;
  // (z+1) xi < pi/2 would force a > c^(z/2-1) >= c^(r/2).
  const Interval ratio = pi_() / static_cast<long>(2 * (z_max + 1));
  BoundFact fr = fact(which, Relation::ge, down12(ratio), "ratio-floor");
  attach(fr, ratio);
  out.facts.push_back(fr);
  const Interval m = ratio * sqrt(Interval::from_big(c_min, kBits) / (ratio * ratio + 1));
  const BigInt least = ceil(m.lower_rational());
  BoundFact fm = fact(which == "ratio1" ? "min(u1,v1)" : "min(u,v)", Relation::ge, Rational(least), "ratio-floor");
  attach(fm, m);
  out.facts.push_back(fm);
  return out;
}

RuleOutcome rule_t_relation(unsigned long r, unsigned long y, unsigned long z) {
  RuleOutcome out;
  if (r % 2 == 0 || z % 2 == 0 || y % 4 != 2) {
    out.rejected = true;
    out.reason = "parity hypotheses violated";
    return out;
  }
  const unsigned long h = r * y / 2;
  if (h <= z) {
    out.rejected = true;
    out.reason = "ry/2 > z violated";
    return out;
  }
  // Both ry/2 and z are odd, so the gap is even.
  const unsigned long t = (h - z) / 2;
  out.facts.push_back(fact("t", Relation::eq, Rational(static_cast<long>(t)), "t-relation"));
  out.facts.push_back(fact("t", Relation::ge, 1, "t-relation"));
  if (t == 1) out.reason = "t = 1 branch eligible";
  return out;
}

RuleOutcome rule_three_adic(unsigned long y, unsigned long z_max_for_y34, unsigned long r_max_y22) {
  RuleOutcome out;
  // c > 3^(y-10) needs v_3(z) <= 5 for y >= 34, i.e. z < 3^6.
  if (y >= 34) {
    if (z_max_for_y34 < 729) {
      out.facts.push_back(fact("c/3^(y-10)", Relation::gt, 1, "three-adic"));
    } else {
      out.reason = "v_3(z) <= 5 not implied by z <= " + std::to_string(z_max_for_y34);
    }
  }
  const Interval base = exp(interval_log(Rational(3), kBits) * 12 / 17);  // 3^(12/17)
  BoundFact fc = fact("c^(1/y)", Relation::gt, make_rational(21716, 10000), "three-adic");
  attach(fc, base);
  out.facts.push_back(fc);
  const Interval printed = Interval::from_rational(make_rational(21716, 10000), kBits);
  const Interval ab = sqrt(pow(printed, 4) + (-1));
  BoundFact fa = fact("a/b", Relation::gt, make_rational(4608, 1000), "three-adic");
  attach(fa, ab);
  out.facts.push_back(fa);
  out.facts.push_back(fact("b^(1/z)", Relation::gt, make_rational(2171, 1000), "three-adic"));
  const Interval slack = kappa(r_max_y22 + 1, kBits) / interval_log(make_rational(2171, 1000), kBits);
  BoundFact fy = fact("y-2z", Relation::lt, ceil(slack.upper_rational() * 2) / Rational(2), "three-adic");
  attach(fy, slack);
  out.facts.push_back(fy);
  return out;
}

const std::vector<unsigned long>& chen_exceptional_y() {
  static const std::vector<unsigned long> ys = {6,   10,  14,  18,  30,  42,  50,  54,  62,  70,
                                                90,  98,  126, 150, 162, 186, 210, 250, 270, 294,
                                                310, 350, 378, 434, 450, 486, 490, 558, 630};
  return ys;
}

namespace {

// y has a prime factor p with 7 < p < 10^7 and p != 31.
bool chen_covers(unsigned long y) {
  unsigned long m = y;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    if (p > 7 && p < 10'000'000 && p != 31) return true;
    while (m % p == 0) m /= p;
  }
  return m > 7 && m < 10'000'000 && m != 31;
}

}  // namespace

RuleOutcome rule_external_filters(unsigned long y, unsigned long z, unsigned long r) {
  RuleOutcome out;
  std::vector<std::string> why;
  if (z % 3 == 0 && chen_covers(y)) why.push_back("3 | z and y has a prime factor 7 < p < 10^7, p != 31 (external: Chen)");
  if (std::gcd(y, z) > 3) why.push_back("gcd(y, z) > 3 (external: Darmon-Merel)");
  if (r && z % r == 0 && std::gcd(y / 2, z / r) > 1) {
    why.push_back("r | z and gcd(y/2, z/r) > 1 (external: Mignotte-Petho)");
  }
  if (!why.empty()) {
    out.rejected = true;
    out.reason = why.front();
    for (const auto& w : why) {
      BoundFact f = fact("candidate", Relation::eq, 0, "external-filters", {}, Provenance::external_assumption);
      f.note = w;
      out.facts.push_back(f);
    }
  }
  return out;
}

std::vector<VerdictRow> published_verdicts() {
  std::vector<VerdictRow> rows;
  for (const auto& p : published_rows()) rows.push_back({p.table, p.y_floor, p.r_max, p.z_max, VerdictSource::published});
  return rows;
}

std::vector<VerdictRow> computed_verdicts(const std::vector<std::string>& tables) {
  std::vector<VerdictRow> rows;
  for (const auto& p : published_rows()) {
    if (std::find(tables.begin(), tables.end(), p.table) == tables.end()) continue;
    const ThresholdResult r = exponent_thresholds(scenario_for(p));
    rows.push_back({p.table, p.y_floor, r.no_solution ? 1 : r.r_max, r.z_max, VerdictSource::computed});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Forward chaining

namespace {

struct Snapshot {
  std::map<std::string, BoundFact> facts;

  struct Best {
    Rational value;
    std::string key;
  };

  bool integer_subject(const std::string& s) const {
    static const std::set<std::string> ints = {"a", "b", "c", "r", "y", "z", "u", "v", "u1", "v1", "t", "x"};
    return ints.count(s) > 0;
  }

  std::optional<Best> upper(const std::string& s) const {
    std::optional<Best> best;
    for (const auto& [k, f] : facts) {
      if (f.subject != s) continue;
      Rational v;
      if (f.relation == Relation::le || f.relation == Relation::eq) v = f.value;
      else if (f.relation == Relation::lt && integer_subject(s)) v = Rational(ceil(f.value) - 1);
      else if (f.relation == Relation::lt) v = f.value;
      else continue;
      if (!best || v < best->value || (v == best->value && k < best->key)) best = Best{v, k};
    }
    return best;
  }

  std::optional<Best> lower(const std::string& s) const {
    std::optional<Best> best;
    for (const auto& [k, f] : facts) {
      if (f.subject != s) continue;
      Rational v;
      if (f.relation == Relation::ge || f.relation == Relation::eq) v = f.value;
      else if (f.relation == Relation::gt && integer_subject(s)) v = Rational(floor(f.value) + 1);
      else if (f.relation == Relation::gt) v = f.value;
      else continue;
      if (!best || v > best->value || (v == best->value && k < best->key)) best = Best{v, k};
    }
    return best;
  }

  bool has(const std::string& key) const { return facts.count(key) > 0; }
};

using Rule = std::function<std::vector<BoundFact>(const Snapshot&, const std::vector<VerdictRow>&)>;

const BigInt& c_regime() {
  static const BigInt c("40000000005");
  return c;
}

// Rows whose hypotheses hold in the snapshot.
std::vector<std::pair<const VerdictRow*, std::vector<std::string>>> applicable_rows(
    const Snapshot& s, const std::vector<VerdictRow>& rows) {
  std::vector<std::pair<const VerdictRow*, std::vector<std::string>>> out;
  const auto c = s.lower("c");
  const auto y = s.lower("y");
  if (!c || !y) return out;
  for (const auto& row : rows) {
    if (y->value < Rational(static_cast<long>(row.y_floor))) continue;
    std::vector<std::string> inputs = {c->key, y->key};
    if (row.table == "c-power-of-3") {
      const BigInt need = pow(BigInt(3), row.y_floor - 10);
      if (c->value < Rational(std::max(need, c_regime()))) {
        if (!s.has("c/3^(y-10)>1") || c->value < Rational(c_regime())) continue;
        inputs.push_back("c/3^(y-10)>1");
      }
    } else if (c->value < Rational(c_regime())) {
      continue;
    }
    if (row.table == "skewed-z") {
      const auto q = s.upper("ratio1");
      if (!q || q->value > make_rational(1, 100)) continue;
      inputs.push_back(q->key);
    } else if (row.table == "skewed-r") {
      const auto q = s.upper("ratio");
      if (!q || q->value > make_rational(1, 100)) continue;
      inputs.push_back(q->key);
    } else if (row.table == "b-large") {
      if (!s.has("b>=c^((r-1)/2)=1")) continue;
      inputs.push_back("b>=c^((r-1)/2)=1");
    } else if (row.table == "t-one") {
      const auto t = s.upper("t");
      if (!t || t->value > 1) continue;
      inputs.push_back(t->key);
    }
    out.emplace_back(&row, inputs);
  }
  return out;
}

const VerdictRow* find_row(const std::vector<VerdictRow>& rows, const std::string& table, unsigned long y) {
  for (const auto& r : rows) {
    if (r.table == table && r.y_floor == y) return &r;
  }
  return nullptr;
}

Provenance row_provenance(const VerdictRow& r) {
  return r.source == VerdictSource::published ? Provenance::external_assumption : Provenance::derived;
}

std::string row_label(const VerdictRow& r) {
  return r.table + " y>=" + std::to_string(r.y_floor) + (r.source == VerdictSource::published ? " (published)" : " (computed)");
}

std::vector<BoundFact> r_parity(const Snapshot& s, const std::vector<VerdictRow>&) {
  std::vector<BoundFact> out;
  bool about_system = false;
  for (const auto& [k, f] : s.facts) {
    if (f.subject == "c" || f.subject == "y" || f.subject == "z" || f.subject == "r") about_system = true;
  }
  if (!about_system) return out;
  out.push_back(fact("x", Relation::eq, 2, "parity"));
  out.push_back(fact("y", Relation::ge, 6, "parity"));
  out.push_back(congruence("y", 2, 4, "parity"));
  out.push_back(congruence("z", 1, 2, "parity"));
  out.push_back(congruence("r", 1, 2, "parity"));
  out.push_back(congruence("c", 5, 8, "parity"));
  out.push_back(fact("r", Relation::ge, 3, "parity"));
  out.push_back(fact("z", Relation::ge, 5, "parity"));
  // Snap bounds to the residue classes.
  auto snap = [&](const std::string& subj, long res, long mod) {
    if (auto lo = s.lower(subj)) {
      BigInt v = ceil(lo->value);
      while (((v % mod) + mod) % mod != res) ++v;
      if (Rational(v) != lo->value) out.push_back(fact(subj, Relation::ge, Rational(v), "parity", {lo->key}));
    }
    if (auto hi = s.upper(subj)) {
      BigInt v = floor(hi->value);
      while (((v % mod) + mod) % mod != res) --v;
      if (Rational(v) != hi->value) out.push_back(fact(subj, Relation::le, Rational(v), "parity", {hi->key}));
    }
  };
  snap("y", 2, 4);
  snap("z", 1, 2);
  snap("r", 1, 2);
  snap("c", 5, 8);
  return out;
}

std::vector<BoundFact> r_thresholds(const Snapshot& s, const std::vector<VerdictRow>& rows) {
  std::vector<BoundFact> out;
  for (const auto& [row, inputs] : applicable_rows(s, rows)) {
    BoundFact fr = fact("r", Relation::le, static_cast<long>(row->r_max), "exponent-thresholds", inputs, row_provenance(*row));
    fr.note = row_label(*row);
    out.push_back(fr);
    if (row->z_max) {
      BoundFact fz = fact("z", Relation::le, static_cast<long>(row->z_max), "exponent-thresholds", inputs, row_provenance(*row));
      fz.note = row_label(*row);
      out.push_back(fz);
    }
  }
  return out;
}

// kappa constants and the y ceiling by the y >= 602 case split.
std::vector<BoundFact> r_y_ceiling(const Snapshot& s, const std::vector<VerdictRow>& rows) {
  std::vector<BoundFact> out;
  const auto c = s.lower("c");
  const auto y = s.lower("y");
  if (!c || !y || c->value < Rational(c_regime())) return out;
  for (const auto& row : rows) {
    if (row.table != "baseline") continue;
    BoundFact k = fact("kappa|y>=" + std::to_string(row.y_floor), Relation::le,
                       up12(kappa(row.r_max + 1, kBits)), "y-over-z", {c->key}, row_provenance(row));
    attach(k, kappa(row.r_max + 1, kBits));
    out.push_back(k);
  }
  const VerdictRow* high = find_row(rows, "baseline", 602);
  if (!high || !high->z_max) return out;
  // In the branch y >= 602: r <= R. If v <= 925 then u/v > sqrt(c - 925^2)/925 and (R+1) v < pi u,
  // so b >= v c^((r-1)/2) >= c; otherwise b >= v > 925.
  const Interval uv = sqrt(Interval::from_big(BigInt(c->value), kBits) + (-925L * 925L)) / 925L;
  if (!Interval::from_int(static_cast<long>(high->r_max + 1), kBits).certainly_lt(pi_() * uv)) return out;
  const Interval bound = (kappa(high->r_max + 1, kBits) / interval_log(Rational(925), kBits) + 2) *
                         static_cast<long>(high->z_max);
  const BigInt ceiling = std::max(BigInt(602), ceil(bound.upper_rational()));
  BoundFact fb = fact("b|y>=602", Relation::ge, 925, "y-over-z", {c->key}, row_provenance(*high));
  out.push_back(fb);
  BoundFact fy = fact("y", Relation::lt, Rational(ceiling), "y-over-z", {c->key, y->key, fb.key()}, row_provenance(*high));
  fy.note = "case split at y = 602 using " + row_label(*high);
  attach(fy, bound);
  out.push_back(fy);
  return out;
}

std::vector<BoundFact> r_lambda_prime(const Snapshot& s, const std::vector<VerdictRow>&) {
  std::vector<BoundFact> out;
  const auto c = s.lower("c");
  const auto r = s.upper("r");
  if (!c || !r || c->value < Rational(c_regime()) || r->value < 3) return out;
  const Interval logc = interval_log(c->value, kBits);
  const Interval delta = -log(-(Interval::from_int(1, kBits) / pow(Interval::from_rational(c->value, kBits), 2)) + 1) / logc;
  BoundFact fd = fact("delta", Relation::lt, make_rational(1, BigInt("10000000000000000000000")), "lambda-prime", {c->key});
  attach(fd, delta);
  if (delta.certainly_lt(Interval::from_rational(fd.value, kBits))) out.push_back(fd);
  const Interval lp = (-delta + 2) * 2 / Interval::from_rational(r->value, kBits);
  BoundFact fl = fact("lambda'", Relation::gt, down12(lp), "lambda-prime", {c->key, r->key});
  attach(fl, lp);
  out.push_back(fl);
  return out;
}

std::vector<BoundFact> r_v_one(const Snapshot& s, const std::vector<VerdictRow>&) {
  std::vector<BoundFact> out;
  if (!s.has("v=1")) return out;
  const auto c = s.lower("c");
  const auto r = s.upper("r");
  const auto y = s.upper("y");
  if (!c || !r || !y) return out;
  const Rational u2 = c->value - 1;
  const Rational top = r->value * r->value * y->value / 2;
  BoundFact f = fact("u^2", Relation::ge, u2, "v-one", {"v=1", c->key});
  out.push_back(f);
  if (u2 >= top) {
    BoundFact x = fact("contradiction", Relation::eq, 1, "v-one", {"v=1", c->key, r->key, y->key});
    x.note = "u^2 >= r^2 y / 2 contradicts u^2 + r^2 < r^2 y / 2";
    out.push_back(x);
  }
  return out;
}

std::vector<BoundFact> r_ratio_floor(const Snapshot& s, const std::vector<VerdictRow>& rows) {
  std::vector<BoundFact> out;
  const auto c = s.lower("c");
  if (!c || c->value < Rational(c_regime())) return out;
  const VerdictRow* row = find_row(rows, "skewed-z", 6);
  if (!row || !row->z_max) return out;
  RuleOutcome o = rule_ratio_floor(row->z_max, BigInt(ceil(c->value)), "ratio1");
  for (auto& f : o.facts) {
    f.inputs = {c->key};
    f.provenance = row_provenance(*row);
    f.note = "via " + row_label(*row);
    out.push_back(f);
  }
  return out;
}

std::vector<BoundFact> r_t_relation(const Snapshot& s, const std::vector<VerdictRow>&) {
  std::vector<BoundFact> out;
  const auto y = s.lower("y");
  if (!y) return out;
  out.push_back(fact("t", Relation::ge, 1, "t-relation", {y->key}));
  return out;
}

std::vector<BoundFact> r_three_adic(const Snapshot& s, const std::vector<VerdictRow>& rows) {
  std::vector<BoundFact> out;
  const auto c = s.lower("c");
  const auto y = s.lower("y");
  if (!c || !y || c->value < Rational(c_regime())) return out;
  const VerdictRow* r22 = find_row(rows, "baseline", 22);
  if (!r22 || !r22->z_max) return out;
  const unsigned long ylo = to_u64(floor(y->value));
  RuleOutcome o = rule_three_adic(std::max(ylo, 6UL), r22->z_max, r22->r_max);
  for (auto& f : o.facts) {
    f.inputs = {c->key, y->key};
    f.provenance = row_provenance(*r22);
    out.push_back(f);
  }
  // Steps stated without a reproducible computation.
  BoundFact f4 = fact("y-2z", Relation::le, 4, "three-adic", {"y-2z<25/2"}, Provenance::external_assumption);
  f4.note = "elimination of y = 2z + 8 and y = 2z + 12 taken as stated";
  out.push_back(f4);
  const VerdictRow* top = find_row(rows, "c-power-of-3", 602);
  if (top && top->z_max) {
    BoundFact fm = fact("y-2z|y>=34", Relation::le, -4, "three-adic", {f4.key()}, Provenance::external_assumption);
    fm.note = "y = 2z + 4 excluded for y >= 34 by an unstated computer verification";
    out.push_back(fm);
    const long ceiling = std::max(598L, 2 * static_cast<long>(top->z_max) - 4);
    BoundFact fy = fact("y", Relation::le, ceiling, "three-adic", {fm.key(), c->key}, row_provenance(*top));
    fy.note = "case split at y = 602 using " + row_label(*top);
    out.push_back(fy);
  }
  return out;
}

std::vector<BoundFact> r_consistency(const Snapshot& s, const std::vector<VerdictRow>&) {
  std::vector<BoundFact> out;
  std::set<std::string> subjects;
  for (const auto& [k, f] : s.facts) subjects.insert(f.subject);
  for (const auto& subj : subjects) {
    const auto lo = s.lower(subj);
    const auto hi = s.upper(subj);
    if (lo && hi && lo->value > hi->value) {
      BoundFact x = fact("contradiction", Relation::eq, 1, "consistency", {lo->key, hi->key});
      x.note = subj + ": " + lo->key + " and " + hi->key;
      out.push_back(x);
    }
  }
  return out;
}

const std::vector<Rule>& rules() {
  static const std::vector<Rule> list = {r_parity,     r_thresholds,  r_y_ceiling,  r_lambda_prime,
                                         r_v_one,      r_ratio_floor, r_t_relation, r_three_adic,
                                         r_consistency};
  return list;
}

// Canonical provenance when two rules produce the same fact.
bool provenance_before(const BoundFact& a, const BoundFact& b) {
  auto joined = [](const BoundFact& f) {
    std::string s = f.rule + "|" + f.note;
    for (const auto& i : f.inputs) s += "|" + i;
    return s;
  };
  return joined(a) < joined(b);
}

void collect_trace(const std::map<std::string, BoundFact>& facts, const std::string& key, std::set<std::string>& seen,
                   std::vector<std::string>& order) {
  if (seen.count(key)) return;
  seen.insert(key);
  auto it = facts.find(key);
  if (it == facts.end()) return;
  for (const auto& in : it->second.inputs) collect_trace(facts, in, seen, order);
  order.push_back(key);
}

}  // namespace

std::size_t rule_count() { return rules().size(); }

std::optional<Rational> DerivationResult::upper(const std::string& subject) const {
  Snapshot s;
  for (const auto& f : facts) s.facts.emplace(f.key(), f);
  auto b = s.upper(subject);
  return b ? std::optional<Rational>(b->value) : std::nullopt;
}

std::optional<Rational> DerivationResult::lower(const std::string& subject) const {
  Snapshot s;
  for (const auto& f : facts) s.facts.emplace(f.key(), f);
  auto b = s.lower(subject);
  return b ? std::optional<Rational>(b->value) : std::nullopt;
}

bool DerivationResult::has(const std::string& key) const {
  return std::any_of(facts.begin(), facts.end(), [&](const BoundFact& f) { return f.key() == key; });
}

DerivationResult derive_all(const DerivationContext& ctx, const std::vector<std::size_t>& rule_order) {
  const auto& all = rules();
  std::vector<std::size_t> order = rule_order;
  if (order.empty()) {
    order.resize(all.size());
    std::iota(order.begin(), order.end(), 0);
  }
  Snapshot snap;
  for (const auto& f : ctx.seeds) snap.facts.emplace(f.key(), f);
  DerivationResult res;
  for (;;) {
    ++res.rounds;
    std::vector<BoundFact> fresh;
    for (std::size_t i : order) {
      auto produced = all.at(i)(snap, ctx.verdicts);
      fresh.insert(fresh.end(), produced.begin(), produced.end());
    }
    bool changed = false;
    for (auto& f : fresh) {
      auto it = snap.facts.find(f.key());
      if (it == snap.facts.end()) {
        snap.facts.emplace(f.key(), f);
        changed = true;
      } else if (it->second.provenance != Provenance::hypothesis && provenance_before(f, it->second)) {
        it->second = f;
        changed = true;
      }
    }
    if (snap.facts.size() > 10'000) throw Error("divergence cap: more than 10^4 facts");
    if (!changed) break;
    if (res.rounds > 1000) throw Error("divergence cap: no fixed point after 1000 rounds");
  }
  for (const auto& [k, f] : snap.facts) res.facts.push_back(f);
  for (const auto& f : res.facts) {
    if (f.subject != "contradiction") continue;
    ExclusionCertificate ex;
    ex.contradiction = f.note;
    std::set<std::string> seen;
    std::vector<std::string> order_keys;
    collect_trace(snap.facts, f.key(), seen, order_keys);
    for (const auto& k : order_keys) {
      const BoundFact& g = snap.facts.at(k);
      if (g.provenance == Provenance::hypothesis) ex.hypotheses.push_back(k);
      if (g.provenance == Provenance::external_assumption) ex.assumptions.push_back(k + " [" + g.note + "]");
      std::string line = k + "  [" + g.rule + "]";
      if (!g.inputs.empty()) {
        line += " <-";
        for (const auto& in : g.inputs) line += " " + in;
      }
      ex.trace.push_back(line);
    }
    res.certificates.push_back(std::move(ex));
  }
  return res;
}

Certificate to_certificate(const ExclusionCertificate& ex, const DerivationContext& ctx) {
  Certificate cert;
  cert.claim = "exclusion";
  cert.module = "bounds-engine";
  Json seeds = Json::array();
  for (const auto& f : ctx.seeds) {
    if (std::find(ex.hypotheses.begin(), ex.hypotheses.end(), f.key()) == ex.hypotheses.end()) continue;
    seeds.push_back({{"subject", f.subject}, {"relation", to_string(f.relation)}, {"value", f.value.get_str()},
                     {"modulus", f.modulus.get_str()}});
  }
  cert.inputs = {{"hypotheses", seeds}};
  Json rows = Json::array();
  for (const auto& r : ctx.verdicts) {
    rows.push_back({{"table", r.table}, {"y_floor", r.y_floor}, {"r_max", r.r_max}, {"z_max", r.z_max},
                    {"source", r.source == VerdictSource::published ? "published" : "computed"}});
  }
  cert.parameters = {{"verdicts", rows}};
  cert.outputs = {{"contradiction", ex.contradiction}};
  for (const auto& t : ex.trace) cert.step("fact", {{"line", t}});
  cert.assumptions = ex.assumptions;
  cert.verdict = Verdict::pass;
  return cert;
}

bool replay_exclusion(const ExclusionCertificate& ex, const DerivationContext& ctx) {
  DerivationContext sub;
  sub.verdicts = ctx.verdicts;
  for (const auto& f : ctx.seeds) {
    if (std::find(ex.hypotheses.begin(), ex.hypotheses.end(), f.key()) != ex.hypotheses.end()) sub.seeds.push_back(f);
  }
  const DerivationResult r = derive_all(sub);
  return std::any_of(r.certificates.begin(), r.certificates.end(),
                     [&](const ExclusionCertificate& e) { return e.contradiction == ex.contradiction; });
}

// ---------------------------------------------------------------------------

std::vector<ConstantCheck> constant_rederivations(const std::vector<VerdictRow>& verdicts) {
  std::vector<ConstantCheck> out;
  auto within = [](const Interval& v, const std::string& printed) {
    // One unit in the last printed digit.
    const auto dot = printed.find('.');
    const long decimals = dot == std::string::npos ? 0 : static_cast<long>(printed.size() - dot - 1);
    BigInt scale = pow(BigInt(10), static_cast<unsigned long>(decimals));
    std::string digits = printed;
    if (dot != std::string::npos) digits.erase(dot, 1);
    const Rational p = make_rational(BigInt(digits, 10), scale);
    const Rational ulp = make_rational(1, scale);
    return v.lower_rational() >= p - ulp && v.upper_rational() <= p + ulp;
  };
  auto exact_int = [](const Interval& v, long n, bool ceil_of) {
    const BigInt lo = ceil_of ? ceil(v.lower_rational()) : floor(v.lower_rational());
    const BigInt hi = ceil_of ? ceil(v.upper_rational()) : floor(v.upper_rational());
    return lo == hi && lo == n;
  };
  auto row = [&](const std::string& t, unsigned long y) { return find_row(verdicts, t, y); };
  const VerdictRow* b14 = row("baseline", 14);
  const VerdictRow* b22 = row("baseline", 22);
  const VerdictRow* b602 = row("baseline", 602);
  const VerdictRow* sz = row("skewed-z", 6);
  const VerdictRow* p602 = row("c-power-of-3", 602);
  const Interval pi = pi_();

  if (b14) {
    const Interval k = kappa(b14->r_max + 1, kBits);
    out.push_back({"9.982", "9.982", k, "log(1+(r+1)^2/pi^2), r+1 = " + std::to_string(b14->r_max + 1), within(k, "9.982")});
  }
  if (b602) {
    const Interval k = kappa(b602->r_max + 1, kBits);
    out.push_back({"8.863", "8.863", k, "log(1+(r+1)^2/pi^2), r+1 = " + std::to_string(b602->r_max + 1), within(k, "8.863")});
  }
  const Interval base = exp(interval_log(Rational(3), kBits) * 12 / 17);
  out.push_back({"2.1716", "2.1716", base, "3^(12/17)", within(base, "2.1716")});
  const Interval ab = sqrt(pow(Interval::from_rational(make_rational(21716, 10000), kBits), 4) + (-1));
  out.push_back({"4.608", "4.608", ab, "sqrt(2.1716^4 - 1)", within(ab, "4.608")});
  if (b22) {
    const Interval s = kappa(b22->r_max + 1, kBits) / interval_log(make_rational(2171, 1000), kBits);
    out.push_back({"12.5", "12.5", s, "log(1+(r+1)^2/pi^2)/log 2.171, r+1 = " + std::to_string(b22->r_max + 1),
                   within(s, "12.5") && s.certainly_lt(Interval::from_rational(make_rational(25, 2), kBits))});
  }
  if (sz) {
    const Interval q = pi / static_cast<long>(2 * (sz->z_max + 1));
    out.push_back({"0.001856", "0.001856", q, "pi/(2(z+1)), z+1 = " + std::to_string(sz->z_max + 1), within(q, "0.001856")});
    const Interval m = q * sqrt(Interval::from_big(c_regime(), kBits) / (q * q + 1));
    out.push_back({"372", "372", m, "ceil(ratio sqrt(c/(1+ratio^2)))", exact_int(m, 372, true)});
  }
  if (b602) {
    const Interval bound = (kappa(b602->r_max + 1, kBits) / interval_log(Rational(925), kBits) + 2) *
                           static_cast<long>(b602->z_max);
    out.push_back({"1778", "1778", bound, "z(2 + kappa/log 925), z = " + std::to_string(b602->z_max),
                   exact_int(bound, 1778, true)});
  }
  if (p602) {
    const Interval v = Interval::from_int(2 * static_cast<long>(p602->z_max) - 4, kBits);
    out.push_back({"634", "634", v, "2z - 4, z = " + std::to_string(p602->z_max), exact_int(v, 634, false)});
  }
  return out;
}

}  // namespace expdio
