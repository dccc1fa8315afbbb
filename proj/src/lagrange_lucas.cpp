#include "expdio/lagrange_lucas.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace expdio {

BigInt lagrange_coeff(unsigned long n, long j) {
  if (n < 1) throw DomainError("lagrange_coeff requires n >= 1");
  if (j < 0 || static_cast<unsigned long>(j) > n / 2) return 0;
  if (j == 0) return 1;
  const auto uj = static_cast<unsigned long>(j);
  // n * (n-2j+1)(n-2j+2)...(n-j-1) / j!
  BigInt num = n;
  for (unsigned long k = n - 2 * uj + 1; k + 1 <= n - uj; ++k) num *= k;
  BigInt den;
  mpz_fac_ui(den.get_mpz_t(), uj);
  BigInt out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

std::vector<std::vector<BigInt>> lagrange_recurrence_table(unsigned long n_max) {
  std::vector<std::vector<BigInt>> t(std::max<unsigned long>(n_max, 2) + 1);
  t[1] = {1};
  t[2] = {1, 2};
  for (unsigned long n = 2; n + 1 <= n_max; ++n) {
    auto& row = t[n + 1];
    row.assign((n + 1) / 2 + 1, 0);
    for (unsigned long j = 0; j < row.size(); ++j) {
      BigInt x = j < t[n].size() ? t[n][j] : BigInt(0);
      if (j >= 1 && j - 1 < t[n - 1].size()) x += t[n - 1][j - 1];
      row[j] = x;
    }
  }
  t.resize(n_max + 1);
  return t;
}

namespace {

// Homogeneous bivariate polynomial of degree d: coeff[i] multiplies X^i Y^(d-i).
using Homog = std::vector<BigInt>;

Homog mul(const Homog& a, const Homog& b) {
  Homog out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t k = 0; k < b.size(); ++k) out[i + k] += a[i] * b[k];
  }
  return out;
}

Homog hpow(const Homog& base, unsigned long e) {
  Homog out{1};
  for (unsigned long i = 0; i < e; ++i) out = mul(out, base);
  return out;
}

}  // namespace

bool lagrange_expand(unsigned long n) {
  if (n < 1) throw DomainError("lagrange_expand requires n >= 1");
  const Homog sum_xy{1, 1};      // Y + X
  const Homog minus_xy{0, -1, 0};  // -XY
  Homog total(n + 1, 0);
  for (unsigned long j = 0; j <= n / 2; ++j) {
    Homog term = mul(hpow(minus_xy, j), hpow(sum_xy, n - 2 * j));
    const BigInt cnj = lagrange_coeff(n, static_cast<long>(j));
    for (std::size_t i = 0; i < term.size(); ++i) total[i] += cnj * term[i];
  }
  for (std::size_t i = 0; i <= n; ++i) {
    const BigInt want = (i == 0 || i == n) ? 1 : 0;
    if (total[i] != want) return false;
  }
  return true;
}

BigInt lagrange_eval(unsigned long n, const BigInt& x, const BigInt& y) {
  BigInt out = 0;
  const BigInt s = x + y, p = -x * y;
  for (unsigned long j = 0; j <= n / 2; ++j) {
    out += lagrange_coeff(n, static_cast<long>(j)) * pow(p, j) * pow(s, n - 2 * j);
  }
  return out;
}

LucasPair lucas_pair(const BigInt& u, const BigInt& v) {
  if (u == 0 || v == 0) throw DomainError("lucas_pair requires u, v nonzero");
  return {PairKind::lucas, u, v, {u, v}, {u, -v}};
}

LucasPair lehmer_pair(const BigInt& u, const BigInt& v) {
  if (u == 0 || v == 0) throw DomainError("lehmer_pair requires u, v nonzero");
  return {PairKind::lehmer, u, v, {u, v}, {-u, v}};
}

namespace {

BigInt term_from_power(const LucasPair& pair, const GaussInt& ar, unsigned long r) {
  BigInt out;
  if (pair.kind == PairKind::lucas) {
    // (a^r - conj(a)^r) / (2vi) = Im(a^r) / v
    mpz_divexact(out.get_mpz_t(), ar.im.get_mpz_t(), pair.v.get_mpz_t());
  } else if (r % 2 == 1) {
    // beta^r = -conj(alpha)^r, alpha - beta = 2u
    mpz_divexact(out.get_mpz_t(), ar.re.get_mpz_t(), pair.u.get_mpz_t());
  } else {
    // alpha^2 - beta^2 = 4uvi
    const BigInt d = 2 * pair.u * pair.v;
    mpz_divexact(out.get_mpz_t(), ar.im.get_mpz_t(), d.get_mpz_t());
  }
  return out;
}

}  // namespace

BigInt lucas_term(const LucasPair& pair, unsigned long r) {
  if (r < 1) throw DomainError("lucas_term requires r >= 1");
  return term_from_power(pair, gauss_pow(pair.alpha, r), r);
}

std::vector<BigInt> lucas_terms(const LucasPair& pair, unsigned long r) {
  std::vector<BigInt> out(r + 1, 0);
  GaussInt p{1, 0};
  for (unsigned long i = 1; i <= r; ++i) {
    p = p * pair.alpha;
    out[i] = term_from_power(pair, p, i);
  }
  return out;
}

BigInt pair_discriminant(const LucasPair& pair) {
  if (pair.kind == PairKind::lucas) return -4 * pair.v * pair.v;
  return -16 * pair.u * pair.u * pair.v * pair.v;
}

PrimitiveDivisorReport primitive_divisor_report(const LucasPair& pair, unsigned long r,
                                                const FactorEffort& effort) {
  if (r < 1) throw DomainError("primitive_divisor_report requires r >= 1");
  const auto terms = lucas_terms(pair, r);
  PrimitiveDivisorReport rep;
  rep.r = r;
  rep.term = terms[r];
  BigInt guard = abs(pair_discriminant(pair));
  for (unsigned long i = 1; i < r; ++i) guard *= abs(terms[i]);
  BigInt t = abs(terms[r]);
  if (t == 0) throw DomainError("degenerate pair: zero term");
  // Strip every prime shared with the guard product.
  for (BigInt g = gcd(t, guard); g > 1; g = gcd(t, g)) t /= g;
  rep.primitive_part = t;
  rep.defective = (t == 1);
  if (!rep.defective) {
    try {
      for (const auto& f : factor(t, effort).factors) rep.primitive_primes.push_back(f.prime);
    } catch (const FactorLimitExceeded&) {
      rep.verdict = Verdict::inconclusive;
    }
  }
  return rep;
}

namespace {

const std::vector<unsigned long> kFunnel{3, 5, 7, 13};

BigInt prime_base(const BigInt& n) {
  if (is_probable_prime(n)) return n;
  BigInt root;
  for (unsigned long k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) && is_probable_prime(root)) return root;
  }
  return 0;
}

}  // namespace

Certificate prime_power_exclusion(PrimePowerTarget which, const Representation& rep,
                                  unsigned long r) {
  Certificate cert;
  cert.claim = "prime-power-exclusion";
  cert.module = "lagrange-lucas";
  const char* names[] = {"a", "b", "c"};
  cert.inputs = {{"which", names[static_cast<int>(which)]},
                 {"c", rep.c.get_str()},
                 {"u", rep.u.get_str()},
                 {"v", rep.v.get_str()},
                 {"r", r}};
  if (!rep.valid()) throw DomainError("prime_power_exclusion: invalid representation");

  if (which == PrimePowerTarget::c) {
    const bool pp = is_prime_power(rep.c);
    cert.outputs = {{"applicable", pp}, {"prime_power", pp}};
    cert.step("prime-power-test", {{"value", rep.c.get_str()}, {"prime_power", pp}});
    if (pp) cert.assumptions.push_back("external-assumption: prime-power c theorem (primitive divisor classification)");
    cert.verdict = Verdict::pass;
    return cert;
  }

  const SolutionWitness w = witness_from(rep, r);
  const bool is_a = which == PrimePowerTarget::a;
  const BigInt target = is_a ? w.a : w.b;
  const BigInt mult = is_a ? rep.u : rep.v;
  const LucasPair pair = is_a ? lehmer_pair(rep.u, rep.v) : lucas_pair(rep.u, rep.v);
  const BigInt p = prime_base(target);
  cert.step("witness", {{"a", w.a.get_str()}, {"b", w.b.get_str()}});
  cert.step("prime-power-test", {{"value", target.get_str()}, {"prime", p.get_str()}});
  if (p == 0) {
    cert.outputs = {{"applicable", false}, {"prime_power", false}};
    cert.verdict = Verdict::pass;
    return cert;
  }

  const BigInt term = abs(lucas_term(pair, r));
  cert.step("term-identity", {{"term", term.get_str()},
                              {"multiplier", mult.get_str()},
                              {"holds", mult * term == target}});
  Json out = {{"applicable", true}, {"prime_power", true}, {"prime", p.get_str()},
              {"p_divides_multiplier", mult % p == 0}};
  if (mult * term != target) {
    cert.outputs = out;
    cert.verdict = Verdict::fail;
    return cert;
  }
  if (!is_a && rep.v == 1) {
    // b = U_r itself; this family is closed by the v = 1 congruence argument.
    out["route"] = "v=1";
    cert.outputs = out;
    cert.assumptions.push_back("closed by the v=1 congruence rule (bounds engine)");
    cert.verdict = Verdict::pass;
    return cert;
  }
  const auto report = primitive_divisor_report(pair, r);
  out["defective"] = report.defective;
  out["in_funnel"] = std::find(kFunnel.begin(), kFunnel.end(), r) != kFunnel.end();
  cert.step("primitive-divisor", {{"primitive_part", report.primitive_part.get_str()},
                                  {"defective", report.defective}});
  if (!report.defective) {
    // A primitive prime q does not divide the multiplier, so target has two primes.
    out["route"] = "contradiction";
    cert.outputs = out;
    cert.verdict = Verdict::fail;
    return cert;
  }
  if (r > 30) {
    out["route"] = "defective-beyond-30";
    cert.outputs = out;
    cert.verdict = Verdict::fail;
    return cert;
  }
  out["route"] = out["in_funnel"].get<bool>() ? "funnel" : "defective-outside-funnel";
  cert.outputs = out;
  cert.assumptions.push_back(
      "external-assumption: defective Lucas/Lehmer classification closes the funnel case");
  cert.verdict = out["in_funnel"].get<bool>() || is_a ? Verdict::pass : Verdict::inconclusive;
  return cert;
}

bool coeff_valuation_bound(unsigned long n, unsigned long j, unsigned long p) {
  if (2 * j >= n) throw DomainError("coeff_valuation_bound requires j <= (n-1)/2");
  const BigInt c = lagrange_coeff(n, static_cast<long>(j));
  const long vc = static_cast<long>(valuation(c, BigInt(p)));
  const long vn = static_cast<long>(valuation(static_cast<std::uint64_t>(n), p));
  // vc >= vn - (n-2j)/(p-1)  <=>  (vc - vn)(p-1) >= -(n-2j)
  return (vc - vn) * static_cast<long>(p - 1) >= -static_cast<long>(n - 2 * j);
}

CongruenceReport congruence_filters(const BigInt& v1, unsigned long z, unsigned long y) {
  if (y % 4 != 2 || y < 6) throw DomainError("congruence_filters requires y = 2 mod 4, y >= 6");
  if (z % 2 == 0) throw DomainError("congruence_filters requires z odd");
  CongruenceReport out;
  if (v1 < 2) return out;
  Factorization fac;
  try {
    fac = factor(v1);
  } catch (const FactorLimitExceeded&) {
    out.verdict = Verdict::inconclusive;
    return out;
  }
  const unsigned long half = y / 2;
  for (const auto& f : fac.factors) {
    PrimeFilter pf;
    pf.p = f.prime;
    pf.vp_v1 = f.exponent;
    pf.vp_z = fits_u64(f.prime) ? valuation(static_cast<std::uint64_t>(z), to_u64(f.prime)) : 0;
    pf.exempt = pf.vp_z > 0;
    pf.valuation_ok = pf.exempt || pf.vp_v1 >= half;
    const unsigned long sum = pf.vp_z + pf.vp_v1;
    pf.identity_ok = sum >= half && sum % half == 0;
    pf.implied_c_exponent = static_cast<long>(y) - 2 * static_cast<long>(pf.vp_z);
    pf.verdict = (pf.valuation_ok && pf.identity_ok) ? Verdict::pass : Verdict::fail;
    if (pf.verdict == Verdict::fail) out.verdict = Verdict::fail;
    out.primes.push_back(pf);
  }
  return out;
}

CongruenceReport congruence_filters(const Representation& rep1, unsigned long z, unsigned long y) {
  return congruence_filters(rep1.v, z, y);
}

std::string default_defective_table_path() {
  return std::string(EXPDIO_DATA_DIR) + "/defective_lucas.tsv";
}

std::vector<DefectiveRow> load_defective_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::vector<DefectiveRow> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream ls(line);
    DefectiveRow row;
    std::string u, v, r, term;
    if (!std::getline(ls, row.kind, '\t') || !std::getline(ls, u, '\t') ||
        !std::getline(ls, v, '\t') || !std::getline(ls, r, '\t') ||
        !std::getline(ls, term, '\t') || !std::getline(ls, row.provenance)) {
      throw ConfigError("malformed row in " + path + ": " + line);
    }
    row.u = big_from_string(u);
    row.v = big_from_string(v);
    row.r = std::stoul(r);
    row.term = big_from_string(term);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace expdio
