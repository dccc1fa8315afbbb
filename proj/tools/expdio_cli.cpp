#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "expdio/bounds.hpp"
#include "expdio/curves.hpp"
#include "expdio/lagrange_lucas.hpp"
#include "expdio/laurent.hpp"
#include "expdio/sweep.hpp"
#include "expdio/thresholds.hpp"

using namespace expdio;

namespace {

enum Exit { ok = 0, verification_failed = 1, inconclusive = 2, config_error = 3 };

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::pass: return ok;
    case Verdict::fail: return verification_failed;
    case Verdict::inconclusive: return inconclusive;
  }
  return inconclusive;
}

BigInt parse_big(const std::string& s) {
  try {
    return BigInt(s, 10);
  } catch (const std::invalid_argument&) {
    throw ConfigError("not an integer: '" + s + "'");
  }
}

Rational parse_rational(const std::string& s) {
  // Accepts "7.7", "77/10" or "8".
  const auto dot = s.find('.');
  if (dot == std::string::npos) {
    Rational q(s, 10);
    q.canonicalize();
    return q;
  }
  std::string digits = s;
  digits.erase(dot, 1);
  return make_rational(BigInt(digits, 10), pow(BigInt(10), static_cast<unsigned long>(s.size() - dot - 1)));
}

// "L=8,rho=7.7,mu=0.56,m=0.1166,R1=4,S1=2"
struct ParamSpec {
  unsigned long L = 0, R1 = 0, S1 = 2;
  Rational rho, mu, m;
};

ParamSpec parse_params(const std::string& text) {
  ParamSpec p;
  std::stringstream ss(text);
  std::string item;
  bool seen_L = false, seen_rho = false, seen_mu = false, seen_m = false;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("bad --params entry '" + item + "'");
    const std::string k = item.substr(0, eq), v = item.substr(eq + 1);
    if (k == "L") p.L = std::stoul(v), seen_L = true;
    else if (k == "rho") p.rho = parse_rational(v), seen_rho = true;
    else if (k == "mu") p.mu = parse_rational(v), seen_mu = true;
    else if (k == "m") p.m = parse_rational(v), seen_m = true;
    else if (k == "R1") p.R1 = std::stoul(v);
    else if (k == "S1") p.S1 = std::stoul(v);
    else throw ConfigError("unknown --params key '" + k + "'");
  }
  if (!seen_L || !seen_rho || !seen_mu || !seen_m) throw ConfigError("--params needs L, rho, mu and m");
  if (p.R1 == 0) p.R1 = (p.L + 1) / 2;
  return p;
}

int cmd_decompose(const std::string& c_text) {
  const BigInt c = parse_big(c_text);
  if (c < 2) throw ConfigError("c must be >= 2");
  const auto reps = cornacchia_all(c);
  if (reps.empty()) {
    std::cout << "none\n";
    return ok;
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    std::cout << (i ? " / " : "") << reps[i].u << " " << reps[i].v;
  }
  std::cout << "\n";
  return ok;
}

int cmd_witness(const std::string& u, const std::string& v, unsigned long r) {
  const BigInt U = parse_big(u), V = parse_big(v);
  if (gcd(U, V) != 1 || U <= 0 || V <= 0) throw ConfigError("u, v must be positive and coprime");
  const Representation rep{U * U + V * V, U, V};
  const SolutionWitness w = witness_from(rep, r);
  const bool good = w.a * w.a + w.b * w.b == pow(rep.c, r);
  std::cout << "a=" << w.a << " b=" << w.b << " c=" << rep.c << " check=" << (good ? "OK" : "FAILED") << "\n";
  return good ? ok : verification_failed;
}

int cmd_laurent(const std::string& c_min, const std::string& params_text, unsigned long b1,
                std::optional<unsigned long> b2, std::optional<std::string> ratio, std::optional<std::string> u,
                std::optional<std::string> v, unsigned long g_max, unsigned long block_lo, bool search) {
  LinearFormInstance inst;
  if (u && v) {
    const BigInt U = parse_big(*u), V = parse_big(*v);
    inst = build_form(Representation{U * U + V * V, U, V}, b1);
  } else {
    std::optional<Rational> skew;
    if (ratio) skew = parse_rational(*ratio);
    inst = regime_form(parse_big(c_min), b1, skew);
  }
  LaurentOptions opt;
  opt.g_max = g_max;
  opt.block_lo = block_lo;
  LaurentParams params;
  if (search) {
    const SearchResult res = param_search(inst, b1, SearchGrid::coarse(), opt);
    if (!res.found) {
      std::cout << "{\"found\": false}\n";
      return verification_failed;
    }
    params = res.params;
  } else {
    const ParamSpec p = parse_params(params_text);
    params = recipe_params(inst, p.L, p.rho, p.mu, p.m, p.R1, p.S1);
  }
  const Certificate cert = laurent_certificate(inst, params, b1, b2, opt);
  std::cout << to_json(cert).dump(2) << "\n";
  return exit_for(cert.verdict);
}

int cmd_thresholds(unsigned long y_floor, const std::string& c_min, const std::string& table, bool trace) {
  ThresholdScenario sc;
  bool found = false;
  for (const auto& row : published_rows()) {
    if (row.table == table && row.y_floor == y_floor) {
      sc = scenario_for(row);
      found = true;
      break;
    }
  }
  if (!found) {
    if (table != "baseline") throw ConfigError("no published row for table '" + table + "' at this y floor");
    sc.name = "baseline";
    sc.y_floor = y_floor;
  }
  if (!c_min.empty()) sc.c_min = parse_big(c_min);
  const ThresholdResult res = exponent_thresholds(sc);
  if (trace) {
    for (const auto& t : res.trace) std::cerr << t << "\n";
  }
  if (res.no_solution) {
    std::cout << "no solution\n";
  } else {
    std::cout << "r<=" << res.r_max;
    if (res.z_max) std::cout << " z<=" << res.z_max;
    std::cout << "\n";
  }
  return ok;
}

int cmd_bounds_table(bool csv, bool computed, const std::string& c_min) {
  std::vector<VerdictRow> rows = computed ? computed_verdicts({"baseline", "skewed-z", "skewed-r", "b-large", "t-one", "c-power-of-3"})
                                          : published_verdicts();
  DerivationContext ctx;
  ctx.verdicts = rows;
  ctx.seeds.push_back(hypothesis("c", Relation::gt, Rational(parse_big(c_min))));
  const DerivationResult res = derive_all(ctx);
  const char sep = csv ? ',' : '\t';
  std::cout << "section" << sep << "subject" << sep << "relation" << sep << "value" << sep << "rule" << sep
            << "provenance" << sep << "note\n";
  for (const auto& r : rows) {
    std::cout << "verdict" << sep << r.table << "/y>=" << r.y_floor << sep << "r<=" << sep << r.r_max << sep
              << (r.source == VerdictSource::published ? "published" : "computed") << sep << "" << sep
              << "z<=" << r.z_max << "\n";
  }
  for (const auto& f : res.facts) {
    std::string note = f.note;
    for (char& ch : note) {
      if (ch == sep || ch == '\n') ch = ' ';
    }
    std::cout << "fact" << sep << f.subject << sep << to_string(f.relation) << sep << f.value.get_str() << sep
              << f.rule << sep << to_string(f.provenance) << sep << note << "\n";
  }
  std::cerr << res.facts.size() << " facts, " << res.rounds << " rounds\n";
  return ok;
}

int cmd_dls(unsigned long y, unsigned long z, unsigned long r) {
  const Certificate cert = dls_certificate(y, z, r);
  std::cout << to_json(cert).dump(2) << "\n";
  return exit_for(cert.verdict);
}

int cmd_lucas_check(const std::string& u, const std::string& v, unsigned long r, bool lehmer) {
  const BigInt U = parse_big(u), V = parse_big(v);
  const LucasPair pair = lehmer ? lehmer_pair(U, V) : lucas_pair(U, V);
  const PrimitiveDivisorReport rep = primitive_divisor_report(pair, r);
  Json primes = Json::array();
  for (const auto& p : rep.primitive_primes) primes.push_back(p.get_str());
  std::cout << Json{{"kind", lehmer ? "lehmer" : "lucas"}, {"u", U.get_str()}, {"v", V.get_str()}, {"r", r},
                    {"term", rep.term.get_str()}, {"primitive_primes", primes}, {"defective", rep.defective},
                    {"verdict", to_string(rep.verdict)}}
                   .dump(2)
            << "\n";
  return rep.verdict == Verdict::inconclusive ? inconclusive : ok;
}

int cmd_sweep(const std::string& config_path, bool resume, std::optional<std::size_t> stop_after,
              std::optional<std::uint64_t> c_max, std::optional<unsigned> threads) {
  SweepConfig config;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open " + config_path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    config = SweepConfig::from_json(j);
  }
  if (c_max) config.c_max = *c_max;
  if (threads) config.threads = *threads;
  config.validate();
  const SweepReport report = sweep(config, resume, stop_after);
  std::cout << report.to_json().dump(2) << "\n";
  return report.exit_code();
}

int cmd_defective_scan(unsigned long bound, unsigned long r_max, const std::string& out_path) {
  std::ostringstream out;
  out << "# Lucas (u+vi, u-vi) and Lehmer (u+vi, -u+vi) terms without a primitive divisor.\n";
  out << "# Found by exhaustive factorization over 1 <= u, v <= " << bound << ", gcd(u, v) = 1, u != v, 2 <= r <= "
      << r_max << ".\n";
  out << "kind\tu\tv\tr\tterm\tprovenance\n";
  std::size_t rows = 0;
  for (unsigned long u = 1; u <= bound; ++u) {
    for (unsigned long v = 1; v <= bound; ++v) {
      if (u == v || std::gcd(u, v) != 1) continue;  // u = v: alpha / beta is a root of unity
      for (const bool lehmer : {false, true}) {
        const LucasPair pair = lehmer ? lehmer_pair(BigInt(u), BigInt(v)) : lucas_pair(BigInt(u), BigInt(v));
        for (unsigned long r = 2; r <= r_max; ++r) {
          const BigInt term = lucas_term(pair, r);
          if (term == 0) continue;  // degenerate pair
          // Defectiveness is decided before factoring; keep the factoring budget tiny.
          const auto rep = primitive_divisor_report(pair, r, FactorEffort{1000});
          if (!rep.defective) continue;
          out << (lehmer ? "lehmer" : "lucas") << "\t" << u << "\t" << v << "\t" << r << "\t" << term
              << "\tlocally-verified:factorization\n";
          ++rows;
        }
      }
    }
  }
  if (out_path.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(out_path);
    if (!f) throw ConfigError("cannot write " + out_path);
    f << out.str();
  }
  std::cerr << rows << " defective terms\n";
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and certified tools for c^z = a^2 + b^y with a + bi = (u + vi)^r"};
  app.require_subcommand(1);

  std::string c_text, u, v, c_min = "40000000005", params, config_path, out_path, table = "baseline";
  unsigned long r = 0, y = 0, z = 0, b1 = 0, g_max = 4, block_lo = 0, y_floor = 6, bound = 30, r_max = 30;
  std::optional<unsigned long> b2;
  std::optional<std::string> ratio, ou, ov;
  std::optional<std::size_t> stop_after;
  std::optional<std::uint64_t> sweep_c_max;
  std::optional<unsigned> threads;
  bool search = false, csv = false, computed = false, resume = false, lehmer = false, trace = false;

  auto* dec = app.add_subcommand("decompose", "Primitive representations c = u^2 + v^2");
  dec->add_option("c", c_text)->required();

  auto* wit = app.add_subcommand("witness", "a + bi = (u + vi)^r and a check of a^2 + b^2 = c^r");
  wit->add_option("u", u)->required();
  wit->add_option("v", v)->required();
  wit->add_option("r", r)->required();

  auto* lau = app.add_subcommand("laurent", "Certified Laurent verdict for one linear form");
  lau->add_option("--c-min", c_min, "Lower end of the c range");
  lau->add_option("--params", params, "L=..,rho=..,mu=..,m=..[,R1=..,S1=..]");
  lau->add_option("--b1", b1, "Coefficient b1 (r or z)")->required();
  lau->add_option("--b2", b2, "Coefficient b2; omitted means unknown");
  lau->add_option("--ratio", ratio, "Skew bound min(u/v, v/u) <= ratio");
  lau->add_option("--u", ou);
  lau->add_option("--v", ov);
  lau->add_option("--g-max", g_max);
  lau->add_option("--block-lo", block_lo, "Certify every b1 in [block-lo, b1]");
  lau->add_flag("--search", search, "Search the parameter grid instead of --params");

  auto* thr = app.add_subcommand("thresholds", "Exponent thresholds r_max, z_max for a y floor");
  thr->add_option("--y-floor", y_floor);
  thr->add_option("--c-min", c_min);
  thr->add_option("--table", table, "baseline, skewed-z, skewed-r, b-large, t-one, c-power-of-3");
  thr->add_flag("--trace", trace);

  auto* bt = app.add_subcommand("bounds-table", "Derived bounds from the threshold table");
  bt->add_flag("--csv", csv);
  bt->add_flag("--computed", computed, "Use computed threshold rows (slow) instead of the published ones");
  bt->add_option("--c-min", c_min, "Seed c > c-min");

  auto* dls = app.add_subcommand("dls", "Irreducibility/genus certificate for b^y - b^2 = c^z - c^r");
  dls->add_option("y", y)->required();
  dls->add_option("z", z)->required();
  dls->add_option("r", r)->required();

  auto* lc = app.add_subcommand("lucas-check", "Primitive-divisor report for U_r");
  lc->add_option("u", u)->required();
  lc->add_option("v", v)->required();
  lc->add_option("r", r)->required();
  lc->add_flag("--lehmer", lehmer);

  auto* sw = app.add_subcommand("sweep", "Sweep c over [c_min, c_max)");
  sw->add_option("--config", config_path);
  sw->add_flag("--resume", resume);
  sw->add_option("--stop-after", stop_after, "Process at most this many shards");
  sw->add_option("--c-max", sweep_c_max);
  sw->add_option("--threads", threads);

  auto* ds = app.add_subcommand("defective-scan", "Regenerate the defective Lucas/Lehmer table");
  ds->add_option("--bound", bound);
  ds->add_option("--r-max", r_max);
  ds->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  try {
    if (*dec) return cmd_decompose(c_text);
    if (*wit) return cmd_witness(u, v, r);
    if (*lau) {
      if (!search && params.empty()) throw ConfigError("laurent needs --params or --search");
      return cmd_laurent(c_min, params, b1, b2, ratio, ou, ov, g_max, block_lo, search);
    }
    if (*thr) return cmd_thresholds(y_floor, thr->count("--c-min") ? c_min : "", table, trace);
    if (*bt) return cmd_bounds_table(csv, computed, c_min);
    if (*dls) return cmd_dls(y, z, r);
    if (*lc) return cmd_lucas_check(u, v, r, lehmer);
    if (*sw) return cmd_sweep(config_path, resume, stop_after, sweep_c_max, threads);
    if (*ds) return cmd_defective_scan(bound, r_max, out_path);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return config_error;
  } catch (const DomainError& e) {
    std::cerr << e.what() << "\n";
    return config_error;
  } catch (const ConditionFailed& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return verification_failed;
  } catch (const Error& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return inconclusive;
  }
  return ok;
}
