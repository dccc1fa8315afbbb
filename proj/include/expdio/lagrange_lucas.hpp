#pragma once

#include <string>
#include <vector>

#include "expdio/certificate.hpp"
#include "expdio/factor.hpp"
#include "expdio/representations.hpp"

namespace expdio {

/// c_{n,j} = (n-j-1)! n / ((n-2j)! j!), zero outside 0 <= j <= n/2.
BigInt lagrange_coeff(unsigned long n, long j);

/// Rows 0..n_max built from c_{n+1,j} = c_{n,j} + c_{n-1,j-1}.
std::vector<std::vector<BigInt>> lagrange_recurrence_table(unsigned long n_max);

/// Expands sum_j c_{n,j} (-XY)^j (X+Y)^(n-2j) as a bivariate polynomial and
/// compares it with X^n + Y^n.
bool lagrange_expand(unsigned long n);

/// sum_j c_{n,j} (-xy)^j (x+y)^(n-2j), evaluated exactly.
BigInt lagrange_eval(unsigned long n, const BigInt& x, const BigInt& y);

enum class PairKind { lucas, lehmer };

struct LucasPair {
  PairKind kind = PairKind::lucas;
  BigInt u;
  BigInt v;
  GaussInt alpha;
  GaussInt beta;
};

/// (u+vi, u-vi).
LucasPair lucas_pair(const BigInt& u, const BigInt& v);
/// (u+vi, -u+vi).
LucasPair lehmer_pair(const BigInt& u, const BigInt& v);

/// Signed U_r for Lucas pairs; signed Lehmer number for Lehmer pairs.
BigInt lucas_term(const LucasPair& pair, unsigned long r);
/// Terms 1..r inclusive (index 0 unused).
std::vector<BigInt> lucas_terms(const LucasPair& pair, unsigned long r);

/// (alpha-beta)^2 for Lucas, (alpha^2-beta^2)^2 for Lehmer.
BigInt pair_discriminant(const LucasPair& pair);

struct PrimitiveDivisorReport {
  unsigned long r = 0;
  BigInt term;
  // Part of |term| coprime to the discriminant-times-earlier-terms product.
  BigInt primitive_part;
  std::vector<BigInt> primitive_primes;
  bool defective = false;
  // Inconclusive when primitive_part > 1 could not be factored in budget;
  // defective is still known to be false then.
  Verdict verdict = Verdict::pass;
};

PrimitiveDivisorReport primitive_divisor_report(const LucasPair& pair, unsigned long r,
                                                const FactorEffort& effort = {});

enum class PrimePowerTarget { a, b, c };

Certificate prime_power_exclusion(PrimePowerTarget which, const Representation& rep,
                                  unsigned long r);

/// v_p(c_{n,j}) >= v_p(n) - (n-2j)/(p-1), evaluated exactly; 0 <= j <= (n-1)/2.
bool coeff_valuation_bound(unsigned long n, unsigned long j, unsigned long p);

struct PrimeFilter {
  BigInt p;
  unsigned long vp_v1 = 0;
  unsigned long vp_z = 0;
  // gcd(p, z) = 1 branch: needs v_p(v1) >= y/2.
  bool exempt = false;
  bool valuation_ok = true;
  // y v_p(b) = 2(v_p(z) + v_p(v1)) requires y/2 | v_p(z) + v_p(v1).
  bool identity_ok = true;
  // The identity forces v_p(v1) >= y/2 - v_p(z), hence c > p^(y - 2 v_p(z)).
  long implied_c_exponent = 0;
  Verdict verdict = Verdict::pass;
};

struct CongruenceReport {
  std::vector<PrimeFilter> primes;
  Verdict verdict = Verdict::pass;
};

CongruenceReport congruence_filters(const Representation& rep1, unsigned long z, unsigned long y);
CongruenceReport congruence_filters(const BigInt& v1, unsigned long z, unsigned long y);

/// Locally verified defective Lucas/Lehmer instances bundled under data/.
struct DefectiveRow {
  std::string kind;
  BigInt u;
  BigInt v;
  unsigned long r = 0;
  BigInt term;
  std::string provenance;
};

std::vector<DefectiveRow> load_defective_table(const std::string& path);
std::string default_defective_table_path();

}  // namespace expdio
