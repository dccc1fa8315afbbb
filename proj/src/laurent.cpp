#include "expdio/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>

#include "expdio/continued_fraction.hpp"

namespace expdio {

namespace {

Interval rat(const Rational& q, Bits bits) { return Interval::from_rational(q, bits); }

// Double prefix sums of sum_{k=1}^{K-1} log k!, grown on demand.
class LogFactorialSums {
 public:
  double at(unsigned long K) {
    std::lock_guard<std::mutex> lock(mu_);
    grow(K);
    return sums_[K];
  }
  const std::vector<double>& table(unsigned long K) {
    std::lock_guard<std::mutex> lock(mu_);
    grow(K);
    return sums_;
  }

 private:
  void grow(unsigned long K) {
    if (sums_.empty()) sums_ = {0.0, 0.0};  // K = 0, 1
    while (sums_.size() <= K) {
      const unsigned long k = sums_.size() - 1;  // adds log k!
      sums_.push_back(sums_.back() + std::lgamma(static_cast<double>(k) + 1.0));
    }
  }
  std::mutex mu_;
  std::vector<double> sums_;
};

LogFactorialSums& lf_sums() {
  static LogFactorialSums s;
  return s;
}

// Certified sum_{k=1}^{K-1} log k! = sum_{j=2}^{K-1} (K - j) log j.
Interval log_superfactorial(unsigned long K, Bits bits) {
  Interval acc = Interval::from_int(0, bits);
  for (unsigned long j = 2; j + 1 <= K; ++j) {
    acc = acc + interval_log(Rational(static_cast<long>(j)), bits + 8) * static_cast<long>(K - j);
  }
  return acc;
}

double cN_double_raw(unsigned long N) {
  const double n = static_cast<double>(N);
  return 2.0 / n * (std::lgamma(n + 1) - (n - 1) * std::log(n) + n + std::log1p(std::pow(1 - std::exp(-1.0), n)));
}

double cN_double(unsigned long N) {
  thread_local std::vector<double> cache;
  if (N >= cache.size()) {
    const std::size_t old = cache.size();
    cache.resize(N + 1024);
    for (std::size_t i = old; i < cache.size(); ++i) cache[i] = i ? cN_double_raw(i) : 0.0;
  }
  return cache[N];
}

double to_d(const Rational& q) { return q.get_d(); }

}  // namespace

Interval laurent_cN(unsigned long N, Bits bits) {
  if (N < 1) throw DomainError("c(N) needs N >= 1");
  const Interval e = Interval::e(bits);
  const Interval ratio = (e - Interval::from_int(1, bits)) / e;
  const Interval inner = Interval::log_factorial(N, bits) -
                         interval_log(Rational(static_cast<long>(N)), bits) * static_cast<long>(N - 1) +
                         Interval::from_int(static_cast<long>(N), bits) +
                         log(pow(ratio, N) + 1);
  return inner * 2 / static_cast<long>(N);
}

LinearFormInstance build_form(const Representation& rep, unsigned long n, Bits bits) {
  if (!rep.valid()) throw DomainError("build_form: invalid representation");
  LinearFormInstance inst;
  inst.rep = rep;
  inst.c = rep.c;
  inst.n = n;
  inst.bits = bits;
  inst.log_c = interval_log(Rational(rep.c), bits);
  inst.height = inst.log_c / 2;
  // arg(alpha) = 2 xi in (0, pi); rotate by i^(-l) into [-pi/4, pi/4].
  const Interval two_xi = interval_atan2(rep.v, rep.u, bits) * 2;
  const Interval quarter = Interval::pi(bits) / 2;
  inst.rotation = std::lround((two_xi / quarter).mid());
  inst.angle = abs(two_xi - quarter * inst.rotation);
  inst.angle_source = "representation";
  return inst;
}

LinearFormInstance regime_form(const BigInt& c_min, unsigned long n, const std::optional<Rational>& ratio,
                               Bits bits) {
  if (c_min < 2) throw DomainError("regime_form needs c_min >= 2");
  LinearFormInstance inst;
  inst.c = c_min;
  inst.n = n;
  inst.bits = bits;
  inst.log_c = interval_log(Rational(c_min), bits);
  inst.height = inst.log_c / 2;
  inst.angle = Interval::pi(bits) / 4;
  inst.angle_source = "pi/4";
  if (ratio) {
    const Interval skew = interval_atan2(ratio->get_num(), ratio->get_den(), bits) * 2;
    if (skew.certainly_lt(inst.angle)) {
      inst.angle = skew;
      inst.angle_source = "2 atan(" + ratio->get_str() + ")";
    }
  }
  return inst;
}

namespace {

struct Heights {
  Interval a1, a2;
};

Heights heights(const LinearFormInstance& inst, const Rational& rho) {
  const Bits bits = inst.bits;
  const Interval r = rat(rho, bits);
  // a_i = rho |log alpha_i| - log|alpha_i| + 2 h(alpha_i); |alpha_i| = 1, h(i) = 0.
  Interval a1 = r * inst.angle + inst.log_c;
  Interval a2 = r * Interval::pi(bits) / 2;
  // Only the upper ends are admissible values.
  return {Interval::from_rational(a1.upper_rational(), bits), Interval::from_rational(a2.upper_rational(), bits)};
}

}  // namespace

LaurentParams recipe_params(const LinearFormInstance& inst, unsigned long L, const Rational& rho,
                            const Rational& mu, const Rational& m, unsigned long R1, unsigned long S1) {
  const Heights h = heights(inst, rho);
  const Bits bits = inst.bits;
  LaurentParams p;
  p.L = L;
  p.rho = rho;
  p.mu = mu;
  p.m = m;
  p.R1 = R1;
  p.S1 = S1;
  const Interval k = rat(m, bits) * static_cast<long>(L) * h.a1 * h.a2;
  p.K = to_u64(ceil(k.upper_rational()));
  const Interval r2 = sqrt(rat(m, bits)) * static_cast<long>(L) * h.a2;
  p.R2 = to_u64(ceil(r2.upper_rational()));
  p.S2 = (1 + (p.K - 1) * L + p.R2 - 1) / p.R2;
  return p;
}

LaurentVerdict laurent_verdict(const LinearFormInstance& inst, const LaurentParams& p, unsigned long b1,
                               std::optional<unsigned long> b2, const LaurentOptions& options) {
  if (p.K < 3 || p.L < 2 || p.R1 < 1 || p.R2 < 1 || p.S1 < 1 || p.S2 < 1) {
    throw DomainError("Laurent parameters out of range");
  }
  if (p.rho <= 1 || p.mu < make_rational(1, 3) || p.mu > 1) throw DomainError("rho > 1 and 1/3 <= mu <= 1 required");
  if (b1 < 1) throw DomainError("b1 >= 1 required");
  const unsigned long lo = options.block_lo ? options.block_lo : b1;
  if (lo > b1) throw DomainError("block_lo must not exceed b1");
  if (options.block_lo && b2) throw DomainError("block bounds need b2 unknown");

  LaurentVerdict v;
  const unsigned long b2_max = b2 ? *b2 : (b1 + 1) / 2;
  const unsigned long b2_min = b2 ? *b2 : 1;

  if (b2 && *b2 == 0) {
    // Lambda = n log alpha and |sin| of the rotated angle is a nonzero multiple of 1/c.
    v.cond_I = v.cond_II = v.cond_III = true;
    v.cond_II_mode = "not-needed";
    v.log_lambda_lower = -inst.log_c;
    v.theta = Interval::from_int(1, inst.bits) / static_cast<long>(lo);
    v.assumptions.push_back("b2 = 0: elementary bound |Lambda| >= 1/c");
    return v;
  }

  // (I): alpha1 is not a root of unity, alpha2 = i has order 4.
  v.cond_I = p.R1 * std::min<unsigned long>(p.S1, 4) >= p.L;

  // (II)
  const unsigned long need = (p.K - 1) * p.L;
  if (b2 && p.R2 * p.S2 <= 1'000'000) {
    std::vector<std::uint64_t> vals;
    vals.reserve(p.R2 * p.S2);
    for (std::uint64_t r = 0; r < p.R2; ++r) {
      for (std::uint64_t s = 0; s < p.S2; ++s) vals.push_back(r * *b2 + s * b1);
    }
    std::sort(vals.begin(), vals.end());
    const auto distinct = static_cast<unsigned long>(std::unique(vals.begin(), vals.end()) - vals.begin());
    v.cond_II = distinct > need;
    v.cond_II_mode = "enumerated";
  } else {
    const unsigned long g = b2 ? std::gcd(b1, *b2) : options.g_max;
    // R2 <= b1/g makes r b2 + s b1 injective on the grid.
    v.cond_II = p.R2 * g <= lo && p.R2 * p.S2 > need;
    v.cond_II_mode = "gcd-criterion";
    if (!b2) {
      v.assumptions.push_back("gcd(b1, b2) <= " + std::to_string(options.g_max) + " for the unknown b2");
    }
  }

  const unsigned long R = p.R(), S = p.S(), N = p.N();
  const Rational g = make_rational(1, 4) - make_rational(static_cast<long>(N), static_cast<long>(12 * R * S));
  const Rational sigma = (1 + 2 * p.mu - p.mu * p.mu) / 2;

  auto evaluate = [&](Bits bits) -> std::optional<LaurentVerdict> {
    LaurentVerdict w = v;
    LinearFormInstance local = inst;
    if (bits != inst.bits) {
      local.bits = bits;
      local.log_c = interval_log(Rational(inst.c), bits);
      // The angle enclosure only gets re-derived for concrete representations.
      if (inst.rep) {
        const auto fresh = build_form(*inst.rep, inst.n, bits);
        local.angle = fresh.angle;
      }
    }
    const Heights h = heights(local, p.rho);
    w.a1 = h.a1;
    w.a2 = h.a2;
    const Interval log_rho = interval_log(p.rho, bits);
    const Rational bnum = make_rational(static_cast<long>((R - 1) * b2_max + (S - 1) * b1), 2);
    const Interval log_b = interval_log(bnum, bits) -
                           log_superfactorial(p.K, bits) * 2 / static_cast<long>(p.K * p.K - p.K);
    w.lhs_III = rat(sigma * static_cast<long>(p.L) - 1, bits) * log_rho * static_cast<long>(p.K) -
                interval_log(Rational(static_cast<long>(N)), bits) * 2 - log_b * static_cast<long>(p.K - 1) -
                rat(g * static_cast<long>(p.L), bits) * (h.a1 * static_cast<long>(R) + h.a2 * static_cast<long>(S));
    w.cN = laurent_cN(N, bits);
    if (w.lhs_III.certainly_gt(w.cN)) {
      w.cond_III = true;
    } else if (w.lhs_III.certainly_le(w.cN)) {
      w.cond_III = false;
    } else {
      return std::nullopt;
    }
    w.bound_exponent = rat(p.mu, bits) * static_cast<long>(p.K * p.L) * log_rho;
    if (w.ok()) {
      // Unwind Lambda' to Lambda: |Lambda| >= rho^(-mu K L) min{2 b2/(L S e), 2 b1/(L R e)}.
      const Interval e = Interval::e(bits);
      const Interval t1 = Interval::from_int(static_cast<long>(2 * b2_min), bits) / (e * static_cast<long>(p.L * S));
      const Interval t2 = Interval::from_int(static_cast<long>(2 * lo), bits) / (e * static_cast<long>(p.L * R));
      const Interval loglam = log(min(t1, t2)) - w.bound_exponent;
      w.log_lambda_lower = loglam;
      w.theta = -loglam / (local.log_c * static_cast<long>(lo));
    }
    return w;
  };
  LaurentVerdict out = with_adaptive_precision(evaluate, "Laurent condition (III)", options.start_bits);
  if (!out.cond_I) out.failed = "I";
  else if (!out.cond_II) out.failed = "II";
  else if (!out.cond_III) out.failed = "III";
  if (out.ok()) {
    out.assumptions.push_back("external: two-logarithm interpolation lemma (consumed as a black box)");
  } else {
    out.log_lambda_lower.reset();
    out.theta.reset();
  }
  return out;
}

namespace {

Json interval_json(const Interval& x) { return Json::array({x.lower(), x.upper()}); }

Json params_json(const LaurentParams& p) {
  return {{"K", p.K}, {"L", p.L}, {"R1", p.R1}, {"R2", p.R2}, {"S1", p.S1}, {"S2", p.S2},
          {"rho", p.rho.get_str()}, {"mu", p.mu.get_str()}, {"m", p.m.get_str()}};
}

}  // namespace

Certificate laurent_certificate(const LinearFormInstance& inst, const LaurentParams& params, unsigned long b1,
                                std::optional<unsigned long> b2, const LaurentOptions& options) {
  Certificate cert;
  cert.claim = "laurent-verdict";
  cert.module = "linear-forms";
  cert.inputs = {{"c_min", inst.c.get_str()}, {"b1", b1}, {"b2", b2 ? Json(*b2) : Json(nullptr)},
                 {"g_max", options.g_max}, {"n", inst.n}, {"bits", inst.bits}};
  if (inst.rep) {
    cert.inputs["u"] = inst.rep->u.get_str();
    cert.inputs["v"] = inst.rep->v.get_str();
  } else {
    cert.inputs["angle"] = inst.angle_source;
  }
  cert.parameters = params_json(params);
  const LaurentVerdict v = laurent_verdict(inst, params, b1, b2, options);
  cert.outputs = {{"conditions", {{"I", v.cond_I}, {"II", v.cond_II}, {"III", v.cond_III}}},
                  {"II_mode", v.cond_II_mode},
                  {"lhs_III", interval_json(v.lhs_III)},
                  {"cN", interval_json(v.cN)}};
  if (options.block_lo) cert.inputs["block_lo"] = options.block_lo;
  if (v.theta) cert.outputs["exponent_interval"] = interval_json(*v.theta);
  cert.step("condition-I", {{"holds", v.cond_I}});
  cert.step("condition-II", {{"holds", v.cond_II}, {"mode", v.cond_II_mode}});
  cert.step("condition-III", {{"holds", v.cond_III}, {"lhs", interval_json(v.lhs_III)}, {"cN", interval_json(v.cN)}});
  cert.assumptions = v.assumptions;
  cert.verdict = v.ok() ? Verdict::pass : Verdict::fail;
  return cert;
}

SearchGrid SearchGrid::standard() {
  SearchGrid g;
  for (unsigned long L = 4; L <= 20; ++L) g.L.push_back(L);
  for (long r = 20; r <= 300; r += 5) g.rho.push_back(make_rational(r, 10));
  for (long m = 34; m <= 100; m += 6) g.mu.push_back(make_rational(m, 100));
  return g;
}

SearchGrid SearchGrid::coarse() {
  SearchGrid g;
  for (unsigned long L = 5; L <= 14; ++L) g.L.push_back(L);
  for (long r = 4; r <= 24; r += 2) g.rho.push_back(Rational(r));
  for (long m = 40; m <= 64; m += 6) g.mu.push_back(make_rational(m, 100));
  g.refine = true;
  return g;
}

SearchGrid SearchGrid::reference_point() {
  SearchGrid g;
  g.L = {8};
  g.rho = {make_rational(77, 10)};
  g.mu = {make_rational(56, 100)};
  g.m = {make_rational(1166, 10000)};
  g.R1 = 4;
  g.S1 = 2;
  return g;
}

namespace {

struct Screen {
  double a1 = 0, a2 = 0, log_c = 0;
  unsigned long b1 = 0;     // (III)
  unsigned long b1_lo = 0;  // (II) and the exponent
  unsigned long b2_max = 0, b2_min = 1, g = 4;
  bool concrete_b2 = false;
};

struct Candidate {
  double theta;
  LaurentParams p;
};

// Margin of (III) in double precision; NaN-safe.
double lhs_minus_cN(const Screen& s, unsigned long K, unsigned long L, unsigned long R1, unsigned long R2,
                    unsigned long S1, unsigned long S2, double rho, double mu, const std::vector<double>& lf) {
  const double R = static_cast<double>(R1 + R2 - 1), S = static_cast<double>(S1 + S2 - 1);
  const double N = static_cast<double>(K * L);
  const double sigma = (1 + 2 * mu - mu * mu) / 2;
  const double g = 0.25 - N / (12 * R * S);
  const double logb = std::log(((R - 1) * s.b2_max + (S - 1) * s.b1) / 2) -
                      2 * lf[K] / (static_cast<double>(K) * K - K);
  const double lhs = K * (sigma * L - 1) * std::log(rho) - 2 * std::log(N) - (K - 1.0) * logb -
                     g * L * (R * s.a1 + S * s.a2);
  return lhs - cN_double(K * L);
}

double screen_theta(const Screen& s, unsigned long K, unsigned long L, unsigned long R1, unsigned long R2,
                    unsigned long S1, unsigned long S2, double rho, double mu) {
  const double R = static_cast<double>(R1 + R2 - 1), S = static_cast<double>(S1 + S2 - 1);
  const double t = std::min(2.0 * s.b2_min / (L * S * M_E), 2.0 * s.b1_lo / (L * R * M_E));
  return (mu * K * L * std::log(rho) - std::log(t)) / (s.b1_lo * s.log_c);
}

bool ii_ok(const Screen& s, unsigned long K, unsigned long L, unsigned long R2, unsigned long S2) {
  if (R2 * S2 <= (K - 1) * L) return false;
  if (s.concrete_b2 && R2 * S2 <= 1'000'000) return true;  // decided exactly later
  return R2 * s.g <= s.b1_lo;
}

constexpr double kMargin = 1e-7;

// Best feasible R2 for fixed K (largest lower bound on |Lambda|), or 0.
unsigned long best_R2(const Screen& s, unsigned long K, unsigned long L, unsigned long R1, unsigned long S1,
                      double rho, double mu, const std::vector<double>& lf, double* theta) {
  const double r0 = std::sqrt(static_cast<double>(K) * L * s.a2 / s.a1);
  const auto lo = static_cast<unsigned long>(std::max(1.0, std::floor(r0 * 0.5)));
  const auto hi = static_cast<unsigned long>(std::ceil(r0 * 1.8)) + 2;
  unsigned long best = 0;
  double best_theta = 0;
  for (unsigned long R2 = lo; R2 <= hi; ++R2) {
    const unsigned long S2 = (1 + (K - 1) * L + R2 - 1) / R2;
    if (!ii_ok(s, K, L, R2, S2)) continue;
    if (lhs_minus_cN(s, K, L, R1, R2, S1, S2, rho, mu, lf) <= kMargin) continue;
    const double t = screen_theta(s, K, L, R1, R2, S1, S2, rho, mu);
    if (best == 0 || t < best_theta) {
      best = R2;
      best_theta = t;
    }
  }
  if (theta) *theta = best_theta;
  return best;
}

constexpr unsigned long kMaxK = 200'000;

void free_search(const Screen& s, unsigned long L, const Rational& rho, const Rational& mu, unsigned long R1,
                 unsigned long S1, std::vector<Candidate>& out) {
  const double rd = to_d(rho), md = to_d(mu);
  // Upper end for K by doubling, then bisection on feasibility.
  unsigned long hi = 3;
  const auto* lf = &lf_sums().table(64);
  auto feasible = [&](unsigned long K) {
    if (K >= lf->size()) lf = &lf_sums().table(K + 1);
    return best_R2(s, K, L, R1, S1, rd, md, *lf, nullptr) != 0;
  };
  while (!feasible(hi)) {
    if (hi > kMaxK) return;
    hi *= 2;
  }
  unsigned long lo = 3;
  while (lo < hi) {
    const unsigned long mid = (lo + hi) / 2;
    if (feasible(mid)) hi = mid;
    else lo = mid + 1;
  }
  // A few K above the minimum can trade K for a smaller S.
  for (unsigned long K = lo; K <= lo + 2; ++K) {
    double th = 0;
    if (K >= lf->size()) lf = &lf_sums().table(K + 1);
    const unsigned long R2 = best_R2(s, K, L, R1, S1, rd, md, *lf, &th);
    if (R2 == 0) continue;
    LaurentParams p;
    p.K = K;
    p.L = L;
    p.R1 = R1;
    p.S1 = S1;
    p.R2 = R2;
    p.S2 = (1 + (K - 1) * L + R2 - 1) / R2;
    p.rho = rho;
    p.mu = mu;
    p.m = Rational(static_cast<long>(K)) / Rational(Rational(static_cast<long>(L)) * Rational(s.a1 * s.a2));
    out.push_back({th, p});
  }
}

bool tuple_less(const Candidate& a, const Candidate& b) {
  if (a.theta != b.theta) return a.theta < b.theta;
  return std::make_tuple(a.p.L, a.p.K, a.p.R2, a.p.S2) < std::make_tuple(b.p.L, b.p.K, b.p.R2, b.p.S2) ||
         (std::make_tuple(a.p.L, a.p.K, a.p.R2, a.p.S2) == std::make_tuple(b.p.L, b.p.K, b.p.R2, b.p.S2) &&
          (a.p.rho < b.p.rho || (a.p.rho == b.p.rho && a.p.mu < b.p.mu)));
}

}  // namespace

SearchResult param_search(const LinearFormInstance& inst, unsigned long b1, const SearchGrid& grid,
                          const LaurentOptions& options) {
  SearchResult res;
  std::vector<Candidate> cands;
  auto screen_for = [&](const Rational& rho) {
    const Heights h = heights(inst, rho);
    Screen s;
    s.a1 = h.a1.upper();
    s.a2 = h.a2.upper();
    s.log_c = inst.log_c.lower();
    s.b1 = b1;
    s.b1_lo = options.block_lo ? options.block_lo : b1;
    s.b2_max = (b1 + 1) / 2;
    s.g = options.g_max;
    return s;
  };
  auto consider = [&](const LaurentParams& p) {
    const Screen s = screen_for(p.rho);
    ++res.evaluated;
    if (!ii_ok(s, p.K, p.L, p.R2, p.S2)) return;
    const auto& lf = lf_sums().table(p.K + 1);
    if (lhs_minus_cN(s, p.K, p.L, p.R1, p.R2, p.S1, p.S2, to_d(p.rho), to_d(p.mu), lf) <= kMargin) return;
    cands.push_back({screen_theta(s, p.K, p.L, p.R1, p.R2, p.S1, p.S2, to_d(p.rho), to_d(p.mu)), p});
  };

  for (const auto& p : grid.extra) consider(p);
  auto run = [&](const std::vector<unsigned long>& Ls, const std::vector<Rational>& rhos,
                 const std::vector<Rational>& mus) {
    for (unsigned long L : Ls) {
      const unsigned long R1 = grid.R1 ? grid.R1 : (L + 1) / 2;
      const unsigned long S1 = grid.S1;
      if (R1 * std::min<unsigned long>(S1, 4) < L) continue;
      for (const auto& rho : rhos) {
        if (rho <= 1) continue;
        for (const auto& mu : mus) {
          if (mu < make_rational(1, 3) || mu > 1) continue;
          if (grid.m.empty()) {
            ++res.evaluated;
            free_search(screen_for(rho), L, rho, mu, R1, S1, cands);
          } else {
            for (const auto& m : grid.m) consider(recipe_params(inst, L, rho, mu, m, R1, S1));
          }
        }
      }
    }
  };
  run(grid.L, grid.rho, grid.mu);
  if (grid.refine && !cands.empty()) {
    const auto best = *std::min_element(cands.begin(), cands.end(), tuple_less);
    std::vector<unsigned long> Ls;
    for (unsigned long L = best.p.L > 2 ? best.p.L - 1 : 2; L <= best.p.L + 1; ++L) Ls.push_back(L);
    std::vector<Rational> rhos, mus;
    for (int i = -8; i <= 8; ++i) rhos.push_back(best.p.rho + make_rational(i, 4));
    for (int i = -5; i <= 5; ++i) mus.push_back(best.p.mu + make_rational(i, 100));
    run(Ls, rhos, mus);
  }
  std::sort(cands.begin(), cands.end(), tuple_less);
  for (std::size_t i = 0; i < cands.size() && i < 16; ++i) {
    LaurentVerdict v;
    try {
      v = laurent_verdict(inst, cands[i].p, b1, std::nullopt, options);
    } catch (const PrecisionExhausted&) {
      continue;
    }
    if (v.ok()) {
      res.found = true;
      res.params = cands[i].p;
      res.verdict = v;
      res.screened_theta = cands[i].theta;
      return res;
    }
  }
  return res;
}

MinXYBound min_xy_bound(const Interval& log_Z, unsigned long n, const Interval& log_lambda_lower) {
  const Bits bits = log_Z.bits();
  const Interval half_n = log_Z * static_cast<long>(n) / 2;
  MinXYBound out;
  out.via_pi = half_n + log_lambda_lower - log(Interval::pi(bits));
  const Interval clamp = interval_log(make_rational(1, 1000), bits);
  const Interval m = log_lambda_lower.certainly_lt(clamp) ? log_lambda_lower : min(log_lambda_lower, clamp);
  out.via_clamp = interval_log(make_rational(99, 100), bits) + half_n + m;
  return out;
}

Interval lambda_value(const Representation& rep, unsigned long n, Bits bits) {
  return angle_distance(rep, n, bits);
}

}  // namespace expdio
