#pragma once

#include <optional>
#include <string>
#include <vector>

#include "expdio/certificate.hpp"
#include "expdio/interval.hpp"
#include "expdio/representations.hpp"

namespace expdio {

/// Lambda = n log(alpha) - b2 log(i) with alpha = eps / conj(eps) rotated by a
/// power of i so that |log alpha| <= pi/4.
struct LinearFormInstance {
  std::optional<Representation> rep;
  BigInt c;  // c itself, or the lower end c_min of a range of c
  unsigned long n = 0;
  Bits bits = kStartBits;
  Interval height;      // h(alpha) = log(c) / 2
  Interval log_c;
  Interval angle;       // upper enclosure of |log alpha| / i after rotation
  long rotation = 0;    // l in alpha * i^l
  std::string angle_source;
};

LinearFormInstance build_form(const Representation& rep, unsigned long n, Bits bits = kStartBits);

/// Instance for every c >= c_min; the angle is bounded by pi/4 or, when the
/// representation is skewed (min{u/v, v/u} <= ratio), by 2 atan(ratio).
LinearFormInstance regime_form(const BigInt& c_min, unsigned long n,
                               const std::optional<Rational>& ratio = std::nullopt,
                               Bits bits = kStartBits);

struct LaurentParams {
  unsigned long K = 0, L = 0;
  unsigned long R1 = 0, R2 = 0, S1 = 0, S2 = 0;
  Rational rho;
  Rational mu;
  Rational m;  // K-scaling constant of the recipe; informational otherwise

  unsigned long R() const { return R1 + R2 - 1; }
  unsigned long S() const { return S1 + S2 - 1; }
  unsigned long N() const { return K * L; }
};

/// K = ceil(m L a1 a2), R2 = ceil(sqrt(m) L a2), S2 = ceil((1 + (K-1) L) / R2).
LaurentParams recipe_params(const LinearFormInstance& inst, unsigned long L, const Rational& rho,
                            const Rational& mu, const Rational& m, unsigned long R1,
                            unsigned long S1);

struct LaurentOptions {
  // gcd(b1, b2) <= g_max assumed when b2 is not known.
  unsigned long g_max = 4;
  Bits start_bits = kStartBits;
  // Nonzero: certify the bound for every b1 in [block_lo, b1] at once.
  // (III) is checked at b1, (II) and the exponent at block_lo.
  unsigned long block_lo = 0;
};

struct LaurentVerdict {
  bool cond_I = false;
  bool cond_II = false;
  bool cond_III = false;
  std::string cond_II_mode;  // "enumerated" | "gcd-criterion" | "not-needed"
  Interval a1, a2;
  Interval lhs_III;
  Interval cN;
  Interval bound_exponent;   // mu K L log rho
  // Lower bound on log|Lambda|, only when all conditions hold.
  std::optional<Interval> log_lambda_lower;
  // |Lambda| >= c^(-theta n); upper enclosure.
  std::optional<Interval> theta;
  std::vector<std::string> assumptions;
  std::string failed;  // which condition failed, empty on success

  bool ok() const { return cond_I && cond_II && cond_III; }
};

/// b2 empty means "unknown, 1 <= b2 <= (b1+1)/2": the worst case is used in
/// each place. Throws PrecisionExhausted if (III) cannot be decided.
LaurentVerdict laurent_verdict(const LinearFormInstance& inst, const LaurentParams& params,
                               unsigned long b1, std::optional<unsigned long> b2,
                               const LaurentOptions& options = {});

Certificate laurent_certificate(const LinearFormInstance& inst, const LaurentParams& params,
                                unsigned long b1, std::optional<unsigned long> b2,
                                const LaurentOptions& options = {});

/// c(N) = (2/N) log(N! N^(1-N) (e^N + (e-1)^N)).
Interval laurent_cN(unsigned long N, Bits bits);

struct SearchGrid {
  std::vector<unsigned long> L;
  std::vector<Rational> rho;
  std::vector<Rational> mu;
  // Recipe mode: K, R2 from m. Free mode (m empty): smallest feasible K and best R2.
  std::vector<Rational> m;
  unsigned long R1 = 0;  // 0: ceil(L/2)
  unsigned long S1 = 2;
  std::vector<LaurentParams> extra;  // always evaluated in addition to the grid
  // Re-search a finer rho/mu/L neighbourhood of the best coarse point.
  bool refine = false;

  static SearchGrid standard();
  static SearchGrid coarse();
  static SearchGrid reference_point();
};

struct SearchResult {
  bool found = false;
  LaurentParams params;
  LaurentVerdict verdict;
  double screened_theta = 0;
  std::size_t evaluated = 0;
};

/// Minimizes theta over the grid: fast double-precision screening, then
/// interval certification of the best candidates in order.
SearchResult param_search(const LinearFormInstance& inst, unsigned long b1, const SearchGrid& grid,
                          const LaurentOptions& options = {});

struct MinXYBound {
  // Lower bounds on log min{X, Y}: log(Z^(n/2) |Lambda| / pi) and
  // log(0.99 Z^(n/2) min{|Lambda|, 0.001}).
  Interval via_pi;
  Interval via_clamp;
};

MinXYBound min_xy_bound(const Interval& log_Z, unsigned long n, const Interval& log_lambda_lower);

/// Direct enclosure of |Lambda| = min_k |2 n xi - k pi| for a concrete representation.
Interval lambda_value(const Representation& rep, unsigned long n, Bits bits = kStartBits);

}  // namespace expdio
