// One line per acceptance criterion: "criterion N PASS|FAIL: detail".
#include <mpfr.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "expdio/bounds.hpp"
#include "expdio/curves.hpp"
#include "expdio/lagrange_lucas.hpp"
#include "expdio/laurent.hpp"
#include "expdio/sweep.hpp"
#include "expdio/thresholds.hpp"

using namespace expdio;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

const BigInt kCMin("40000000005", 10);

unsigned width() { return std::max(1U, std::thread::hardware_concurrency()); }

// Primitive pairs (u even, v odd) with u^2 + v^2 = c by a two-pointer walk.
std::set<std::pair<std::uint64_t, std::uint64_t>> walk(std::uint64_t c) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> out;
  std::uint64_t lo = 0, hi = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(c))) + 1;
  while (hi * hi > c) --hi;
  while (lo <= hi) {
    const std::uint64_t s = lo * lo + hi * hi;
    if (s == c) {
      if (std::gcd(lo, hi) == 1) out.insert(lo % 2 == 0 ? std::make_pair(lo, hi) : std::make_pair(hi, lo));
      ++lo;
    } else if (s < c) {
      ++lo;
    } else {
      --hi;
    }
  }
  return out;
}

Outcome criterion1() {
  const std::uint64_t limit = 1'000'000;
  const unsigned w = width();
  std::vector<std::uint64_t> mismatches(w, 0), checked(w, 0);
  std::vector<std::uint64_t> first_bad(w, 0);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < w; ++t) {
    pool.emplace_back([&, t] {
      for (std::uint64_t c = 5 + 4 * t; c <= limit; c += 4 * w) {
        std::set<std::pair<std::uint64_t, std::uint64_t>> got;
        for (const auto& r : cornacchia_all(from_u64(c))) got.insert({to_u64(r.u), to_u64(r.v)});
        ++checked[t];
        if (got != walk(c)) {
          if (!mismatches[t]) first_bad[t] = c;
          ++mismatches[t];
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  const auto bad = std::accumulate(mismatches.begin(), mismatches.end(), std::uint64_t{0});
  const auto n = std::accumulate(checked.begin(), checked.end(), std::uint64_t{0});
  std::ostringstream os;
  os << n << " values of c = 1 mod 4 up to 10^6, " << bad << " mismatches";
  if (bad) os << " (first at c = " << *std::max_element(first_bad.begin(), first_bad.end()) << ")";
  return {bad == 0, os.str()};
}

Outcome criterion2() {
  unsigned expand_fail = 0, coeff_fail = 0;
  for (unsigned long n = 1; n <= 60; ++n) {
    if (!lagrange_expand(n)) ++expand_fail;
  }
  const auto table = lagrange_recurrence_table(300);
  for (unsigned long n = 1; n <= 300; ++n) {
    for (unsigned long j = 0; 2 * j <= n; ++j) {
      if (table[n][j] != lagrange_coeff(n, static_cast<long>(j))) ++coeff_fail;
    }
  }
  std::ostringstream os;
  os << "expansion failures n<=60: " << expand_fail << ", closed form vs recurrence mismatches n<=300: " << coeff_fail;
  return {expand_fail == 0 && coeff_fail == 0, os.str()};
}

Outcome criterion3() {
  std::ostringstream os;
  bool pass = true;
  const auto inst = regime_form(kCMin, 771);
  const auto params =
      recipe_params(inst, 8, make_rational(77, 10), make_rational(56, 100), make_rational(1166, 10000), 4, 2);
  const auto v = laurent_verdict(inst, params, 771, std::nullopt);
  os << "published point K=" << params.K << " R2=" << params.R2 << " S2=" << params.S2 << " conditions I/II/III="
     << v.cond_I << v.cond_II << v.cond_III << " lhs(III)=" << v.lhs_III.str(8) << " c(N)=" << v.cN.str(8);
  if (!v.ok() || !v.theta || v.theta->upper() > 0.2113 + 0.0005) {
    pass = false;
    if (v.theta) os << " theta=" << v.theta->str(6);
  } else {
    os << " theta<=" << v.theta->upper();
  }
  const auto best = param_search(inst, 771, SearchGrid::coarse());
  if (best.found) os << "; best searched theta(771)=" << best.verdict.theta->upper();

  struct Want {
    unsigned long y, r, z;
  };
  for (const Want w : {Want{6, 769, 983}, Want{10, 539, 759}, Want{14, 461, 681}, Want{18, 419, 647},
                       Want{22, 395, 627}, Want{602, 263, 539}}) {
    ThresholdScenario sc;
    sc.name = "baseline";
    sc.c_min = kCMin;
    sc.y_floor = w.y;
    const auto res = exponent_thresholds(sc);
    const bool ok = res.r_max == w.r && res.z_max == w.z;
    pass = pass && ok;
    os << "; y>=" << w.y << " r<=" << res.r_max << " z<=" << res.z_max << (ok ? "" : " (expected " + std::to_string(w.r) + "/" + std::to_string(w.z) + ")");
  }
  return {pass, os.str()};
}

Outcome criterion4() {
  SweepConfig cfg;
  cfg.c_min = 85;
  cfg.c_max = 10'000'000;
  const auto t0 = std::chrono::steady_clock::now();
  const SweepReport rep = sweep(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream os;
  os << "[85, 10^7): " << rep.totals.admissible << " admissible c, " << rep.totals.representations
     << " representations, " << rep.totals.exact_checks << " exact checks, " << rep.survivors.size()
     << " survivors, " << rep.quarantined.size() << " quarantined shards, " << static_cast<long>(secs) << " s at width "
     << sweep_threads(cfg);
  for (const auto& s : rep.survivors) os << "; survivor " << s.str();
  return {rep.verified(), os.str()};
}

Outcome criterion5() {
  unsigned equal = 0, total = 0;
  for (unsigned long y : {6UL, 10UL, 14UL}) {
    const ZPoly D = stickelberger_disc(TrinomialShape::b_side, y).disc;
    for (auto [z, r] : {std::pair{5UL, 3UL}, std::pair{7UL, 3UL}, std::pair{7UL, 5UL}, std::pair{9UL, 5UL}}) {
      const ZPoly E = stickelberger_disc(TrinomialShape::c_side, z, r).disc;
      for (long lam : {1L, -1L, 2L, -2L, 3L}) {
        ++total;
        const BigInt L(lam);
        if (D.eval(L) == disc_oracle(trinomial(y, 2, L)) && E.eval(L) == disc_oracle(trinomial(z, r, L))) ++equal;
      }
    }
  }
  return {equal == 60 && total == 60, std::to_string(equal) + "/" + std::to_string(total) + " exact equalities"};
}

Outcome criterion6() {
  unsigned long checked = 0, failed = 0;
  for (unsigned long n = 1; n <= 200; ++n) {
    for (unsigned long p = 2; p <= 50; ++p) {
      if (!is_prime_u64(p)) continue;
      for (unsigned long j = 0; 2 * j < n; ++j) {
        ++checked;
        if (!coeff_valuation_bound(n, j, p)) ++failed;
      }
    }
  }
  return {failed == 0, std::to_string(checked) + " (n, j, p) triples, " + std::to_string(failed) + " violations"};
}

Outcome criterion7() {
  const auto checks = constant_rederivations(published_verdicts());
  std::ostringstream os;
  bool pass = checks.size() == 9;
  for (const auto& c : checks) {
    pass = pass && c.ok;
    os << c.printed << (c.ok ? " ok " : " DEVIATES ") << c.value.str(8) << "; ";
  }
  return {pass, os.str()};
}

Outcome criterion8() {
  std::mt19937_64 rng(8);
  unsigned cases = 0, failures = 0;
  std::ostringstream bad;
  while (cases < 100) {
    const BigInt u = 1 + rng() % 5000, v = 1 + rng() % 5000;
    if (gcd(u, v) != 1 || u == v) continue;
    const unsigned long r = 1 + 2 * (rng() % 25);
    ++cases;
    const Representation rep{u * u + v * v, u, v};
    const SolutionWitness w = witness_from(rep, r);
    bool ok = w.a * w.a + w.b * w.b == pow(rep.c, r);
    ok = ok && w.b == v * abs(lucas_term(lucas_pair(u, v), r));
    ok = ok && w.a == u * abs(lucas_term(lehmer_pair(u, v), r));
    const BigInt m = std::min(w.a, w.b);
    if (m > 0) {
      const Bits bits = 256;
      const Interval lam = lambda_value(rep, r, bits);
      const auto bound = min_xy_bound(interval_log(Rational(rep.c), bits), r, log(lam));
      ok = ok && bound.via_pi.certainly_le(interval_log(Rational(m), bits));
    }
    if (!ok) {
      ++failures;
      bad << " (" << u << "," << v << "," << r << ")";
    }
  }
  return {failures == 0, std::to_string(cases) + " random witnesses, " + std::to_string(failures) + " failures" + bad.str()};
}

bool interval_soundness(std::string& detail) {
  std::mt19937_64 rng(9);
  unsigned bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const Bits bits = 53 + static_cast<Bits>(rng() % 300);
    const Rational x = make_rational(1 + static_cast<long>(rng() % 1'000'000), 1 + static_cast<long>(rng() % 10'000));
    const Rational y = make_rational(static_cast<long>(rng() % 2'000'001) - 1'000'000, 1 + static_cast<long>(rng() % 10'000));
    const Interval X = Interval::from_rational(x, bits), Y = Interval::from_rational(y, bits);
    mpfr_t o, a, b;
    mpfr_inits2(4 * bits, o, a, b, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_q(a, x.get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(b, y.get_mpq_t(), MPFR_RNDN);
    Interval got(bits);
    switch (i % 6) {
      case 0: got = X * Y; mpfr_mul(o, a, b, MPFR_RNDN); break;
      case 1: got = X / (Y * Y + 1); mpfr_sqr(o, b, MPFR_RNDN); mpfr_add_ui(o, o, 1, MPFR_RNDN); mpfr_div(o, a, o, MPFR_RNDN); break;
      case 2: got = log(X); mpfr_log(o, a, MPFR_RNDN); break;
      case 3: got = sqrt(X) + Y; mpfr_sqrt(o, a, MPFR_RNDN); mpfr_add(o, o, b, MPFR_RNDN); break;
      case 4: got = atan(Y); mpfr_atan(o, b, MPFR_RNDN); break;
      default: got = exp(Y / 100000); mpfr_div_ui(o, b, 100000, MPFR_RNDN); mpfr_exp(o, o, MPFR_RNDN); break;
    }
    if (!(mpfr_lessequal_p(got.lo(), o) && mpfr_lessequal_p(o, got.hi()))) ++bad;
    mpfr_clears(o, a, b, static_cast<mpfr_ptr>(nullptr));
  }
  detail = "interval 1000 cases, " + std::to_string(bad) + " unsound";
  return bad == 0;
}

bool order_independence(std::string& detail) {
  DerivationContext ctx;
  ctx.verdicts = published_verdicts();
  ctx.seeds = {hypothesis("c", Relation::gt, Rational(BigInt("40000000000", 10))), hypothesis("y", Relation::ge, 602)};
  auto keys = [](const DerivationResult& r) {
    std::vector<std::string> k;
    for (const auto& f : r.facts) k.push_back(f.key() + "|" + f.rule + "|" + f.note);
    return k;
  };
  const auto reference = keys(derive_all(ctx));
  std::vector<std::size_t> order(rule_count());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937 rng(10);
  unsigned differ = 0;
  for (int i = 0; i < 10; ++i) {
    std::shuffle(order.begin(), order.end(), rng);
    if (keys(derive_all(ctx, order)) != reference) ++differ;
  }
  detail = "derive_all 10 shuffles, " + std::to_string(differ) + " differ";
  return differ == 0;
}

bool merge_determinism(std::string& detail) {
  std::vector<std::uint64_t> digests;
  for (unsigned w : {1U, 4U, 16U}) {
    SweepConfig cfg;
    cfg.c_max = 300'000;
    cfg.threads = w;
    cfg.shard_size = 7919;
    digests.push_back(sweep(cfg).digest);
  }
  const bool same = digests[0] == digests[1] && digests[1] == digests[2];
  detail = std::string("sweep digests at widths 1/4/16 ") + (same ? "identical" : "differ");
  return same;
}

bool certificate_replay(std::string& detail) {
  std::vector<Certificate> certs;
  const auto inst = regime_form(kCMin, 771);
  certs.push_back(laurent_certificate(
      inst, recipe_params(inst, 8, make_rational(77, 10), make_rational(56, 100), make_rational(1166, 10000), 4, 2),
      771, std::nullopt));
  for (unsigned long n : {1001UL, 3001UL}) {
    const auto form = regime_form(kCMin, n);
    const auto res = param_search(form, n, SearchGrid::coarse());
    if (res.found) certs.push_back(laurent_certificate(form, res.params, n, std::nullopt));
  }
  for (unsigned long y : {6UL, 10UL, 14UL}) {
    for (auto [z, r] : {std::pair{5UL, 3UL}, std::pair{7UL, 3UL}, std::pair{9UL, 5UL}}) certs.push_back(dls_certificate(y, z, r));
  }
  for (long c : {85L, 145L, 2117L}) {
    for (const auto& rep : cornacchia_all(BigInt(c))) {
      for (auto which : {PrimePowerTarget::a, PrimePowerTarget::b, PrimePowerTarget::c}) {
        certs.push_back(prime_power_exclusion(which, rep, 5));
      }
    }
  }
  DerivationContext ctx;
  ctx.verdicts = published_verdicts();
  ctx.seeds = {hypothesis("c", Relation::gt, Rational(BigInt("40000000000", 10))), hypothesis("v", Relation::eq, 1)};
  for (const auto& ex : derive_all(ctx).certificates) certs.push_back(to_certificate(ex, ctx));
  SweepConfig cfg;
  cfg.c_max = 5000;
  const SweepWorker worker(cfg);
  for (std::uint64_t lo = 85; lo < 5000; lo += 1000) {
    certs.push_back(shard_certificate(cfg, worker.run_shard(lo, std::min<std::uint64_t>(lo + 1000, 5000))));
  }
  unsigned ok = 0;
  std::string first_bad;
  for (const auto& c : certs) {
    const Json j = to_json(c);
    const bool valid = validate_certificate(j).empty();
    const ReplayResult r = replay(certificate_from_json(Json::parse(j.dump())));
    if (valid && r.ok) {
      ++ok;
    } else if (first_bad.empty()) {
      first_bad = " first failure " + c.claim + ": " + r.message;
    }
  }
  detail = "certificates replayed " + std::to_string(ok) + "/" + std::to_string(certs.size()) + first_bad;
  return ok == certs.size();
}

Outcome criterion9() {
  std::string a, b, c, d;
  const bool pa = interval_soundness(a), pb = order_independence(b), pc = merge_determinism(c), pd = certificate_replay(d);
  return {pa && pb && pc && pd, a + "; " + b + "; " + c + "; " + d};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                          criterion6, criterion7, criterion8, criterion9};
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      which.push_back(std::stoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 2;
    }
  }
  if (which.empty()) {
    for (int i = 1; i <= 9; ++i) which.push_back(i);
  }
  bool all = true;
  for (const int n : which) {
    if (n < 1 || n > 9) {
      std::cerr << "no criterion " << n << "\n";
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[n - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("raised: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << n << " " << (o.pass ? "PASS" : "FAIL") << " (" << std::fixed
              << std::setprecision(1) << secs << " s): " << o.detail << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
