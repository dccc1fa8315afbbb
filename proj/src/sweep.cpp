#include "expdio/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "expdio/continued_fraction.hpp"

namespace expdio {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

Json SweepConfig::to_json() const {
  return {{"c_min", c_min},         {"c_max", c_max},           {"r_max", r_max},
          {"z_max", z_max},         {"n_cap", n_cap},           {"rho_iterations", rho_iterations},
          {"threads", threads},     {"shard_size", shard_size}, {"output_dir", output_dir}};
}

SweepConfig SweepConfig::from_json(const Json& j) {
  static const std::set<std::string> known = {"c_min", "c_max",          "r_max",   "z_max",      "n_cap",
                                               "rho_iterations", "threads", "shard_size", "output_dir"};
  if (!j.is_object()) throw ConfigError("sweep config must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!known.count(k)) throw ConfigError("unknown sweep config key '" + k + "'");
  }
  SweepConfig c;
  try {
    c.c_min = j.value("c_min", c.c_min);
    c.c_max = j.value("c_max", c.c_max);
    c.r_max = j.value("r_max", c.r_max);
    c.z_max = j.value("z_max", c.z_max);
    c.n_cap = j.value("n_cap", c.n_cap);
    c.rho_iterations = j.value("rho_iterations", c.rho_iterations);
    c.threads = j.value("threads", c.threads);
    c.shard_size = j.value("shard_size", c.shard_size);
    c.output_dir = j.value("output_dir", c.output_dir);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad sweep config value: ") + e.what());
  }
  c.validate();
  return c;
}

void SweepConfig::validate() const {
  if (c_min < 85) throw ConfigError("c_min must be >= 85");
  if (c_max < c_min) throw ConfigError("c_max must be >= c_min");
  if (r_max < 3 || r_max % 2 == 0) throw ConfigError("r_max must be odd and >= 3");
  if (z_max <= r_max || z_max % 2 == 0) throw ConfigError("z_max must be odd and > r_max");
  if (n_cap < 11) throw ConfigError("n_cap must be >= 11");
}

std::string SweepConfig::fingerprint() const {
  Json j = to_json();
  j.erase("threads");
  j.erase("output_dir");
  j.erase("shard_size");
  return j.dump();
}

std::string Survivor::str() const {
  std::ostringstream os;
  os << "c=" << c << " u=" << u << " v=" << v << " r=" << r << " z=" << z << " y=" << y;
  return os.str();
}

void ShardCounters::add(const ShardCounters& o) {
  numbers += o.numbers;
  admissible += o.admissible;
  representations += o.representations;
  failing_blocks += o.failing_blocks;
  per_n_checks += o.per_n_checks;
  exact_checks += o.exact_checks;
}

Json ShardCounters::to_json() const {
  return {{"numbers", numbers},           {"admissible", admissible},     {"representations", representations},
          {"failing_blocks", failing_blocks}, {"per_n_checks", per_n_checks}, {"exact_checks", exact_checks}};
}

ShardCounters ShardCounters::from_json(const Json& j) {
  ShardCounters c;
  c.numbers = j.at("numbers");
  c.admissible = j.at("admissible");
  c.representations = j.at("representations");
  c.failing_blocks = j.at("failing_blocks");
  c.per_n_checks = j.at("per_n_checks");
  c.exact_checks = j.at("exact_checks");
  return c;
}

SweepWorker::SweepWorker(const SweepConfig& config, const SpfSieve* sieve) : config_(config), sieve_(sieve) {}

namespace {

struct AngleSets {
  std::set<unsigned long> sb;  // odd n >= 11 where b >= c^(n/(2 sqrt 3)) is not certified
  std::set<unsigned long> sa;  // same for a
};

// kappa = 1/2 - 1/(2 sqrt 3): x >= c^(n/(2 sqrt 3)) follows from a parity distance >= c^(-kappa n).
AngleSets angle_sets(const Representation& rep, unsigned long n_cap, ShardCounters& counters) {
  AngleSets sets;
  const AngleExpansion ex = expand_angle(rep, BigInt(static_cast<unsigned long>(n_cap)));
  const Bits bits = ex.bits;
  const Interval three = Interval::from_int(3, bits);
  const Interval kappa = Interval::from_rational(make_rational(1, 2), bits) - Interval::from_int(1, bits) / (sqrt(three) * 2);
  const Interval logc = interval_log(Rational(rep.c), bits);
  auto threshold = [&](unsigned long n) { return exp(-(kappa * logc * static_cast<long>(n))); };
  for (std::size_t j = 0; j < ex.conv.size(); ++j) {
    const BigInt& q = ex.conv[j].q;
    if (q >= n_cap) break;
    const unsigned long q_lo = q.get_ui();
    const unsigned long q_hi = j + 1 < ex.conv.size() ? static_cast<unsigned long>(std::min<double>(ex.conv[j + 1].q.get_d(), n_cap)) : n_cap;
    const unsigned long n_lo = std::max(q_lo, 11UL);
    if (n_lo >= q_hi) continue;
    // ||n x|| >= ||q_j x|| for every n < q_{j+1}.
    const Interval d = dist_to_int(Interval::from_big(q, bits) * ex.x);
    if (d.certainly_ge(threshold(n_lo))) continue;
    ++counters.failing_blocks;
    for (unsigned long n = n_lo | 1UL; n < q_hi; n += 2) {
      ++counters.per_n_checks;
      const Interval t = ex.x * static_cast<long>(n);
      const Interval thr = threshold(n);
      // |sin(n xi)| >= dist(n x, 2Z), |cos(n xi)| >= dist(n x, 2Z + 1).
      if (!dist_to_parity(t, false).certainly_ge(thr)) sets.sb.insert(n);
      if (!dist_to_parity(t, true).certainly_ge(thr)) sets.sa.insert(n);
    }
  }
  return sets;
}

std::string join(const std::set<unsigned long>& s) {
  std::string out;
  for (auto n : s) out += std::to_string(n) + ",";
  return out;
}

}  // namespace

CValue SweepWorker::check(std::uint64_t c, ShardCounters& counters) const {
  CValue out;
  out.c = c;
  if (c % 8 != 5 || c < 85) return out;
  const BigInt C = from_u64(c);
  FactorEffort effort;
  effort.rho_iterations = config_.rho_iterations;
  const Factorization fac = sieve_ && c < sieve_->limit() ? sieve_->factor(static_cast<std::uint32_t>(c)) : factor(C, effort);
  for (const auto& pp : fac.factors) {
    if (pp.prime % 4 != 1) return out;  // no primitive representation
  }
  // Prime powers are closed by the primitive-divisor theorem (external).
  if (!residue_class_filter(C, fac)) return out;
  out.admissible = true;
  ++counters.admissible;
  out.reps = cornacchia_all(C, fac);
  counters.representations += out.reps.size();

  std::vector<AngleSets> sets;
  std::set<unsigned long> sa_all;
  for (const auto& rep : out.reps) {
    sets.push_back(angle_sets(rep, config_.n_cap, counters));
    sa_all.insert(sets.back().sa.begin(), sets.back().sa.end());
  }

  std::vector<BigInt> cpow = {BigInt(1)};
  auto c_to = [&](unsigned long z) -> const BigInt& {
    while (cpow.size() <= z) cpow.push_back(cpow.back() * C);
    return cpow[z];
  };
  std::ostringstream h;
  h << c << ";";
  for (std::size_t i = 0; i < out.reps.size(); ++i) {
    const Representation& rep = out.reps[i];
    h << rep.u << "," << rep.v << ":b" << join(sets[i].sb) << ":a" << join(sets[i].sa) << ";";
    // Candidate (r, z) pairs left open by the angle bounds.
    std::set<std::pair<unsigned long, unsigned long>> pairs;
    std::set<unsigned long> rs = {3, 5, 7, 9};
    rs.insert(sets[i].sb.begin(), sets[i].sb.end());
    for (unsigned long r : rs) {
      for (unsigned long z = r + 2; z <= config_.z_max && z < config_.n_cap; z += 2) {
        const bool small = z < 10;
        const bool near = z * z < 3 * r * r;  // 2z < 2 sqrt(3) r
        if (small || near || sa_all.count(z)) pairs.emplace(r, z);
      }
    }
    for (unsigned long z : sa_all) {
      // b >= c^(r/(2 sqrt 3)) and y >= 6 force z > sqrt(3) r.
      for (unsigned long r = 11; 3 * r * r < z * z; r += 2) pairs.emplace(r, z);
    }
    unsigned long cached_r = 0;
    SolutionWitness w;
    for (const auto& [r, z] : pairs) {
      if (r > config_.r_max) continue;  // outside the window: reported through the digest only
      if (r != cached_r) {
        w = witness_from(rep, r);
        cached_r = r;
      }
      ++counters.exact_checks;
      BigInt t = c_to(z) - w.a * w.a;
      if (t <= 0) continue;
      if (w.b == 1) {
        if (t == 1) out.survivors.push_back({c, rep.u, rep.v, r, z, 0});
        continue;
      }
      BigInt rest;
      const unsigned long y = mpz_remove(rest.get_mpz_t(), t.get_mpz_t(), w.b.get_mpz_t());
      if (rest == 1) out.survivors.push_back({c, rep.u, rep.v, r, z, y});
    }
    std::set<unsigned long> beyond;
    for (unsigned long r : rs) {
      if (r > config_.r_max) beyond.insert(r);
    }
    if (!beyond.empty()) h << "open-r:" << join(beyond) << ";";
  }
  for (const auto& s : out.survivors) h << "S" << s.str() << ";";
  out.hash = fnv1a64(h.str());
  return out;
}

SweepShard SweepWorker::run_shard(std::uint64_t lo, std::uint64_t hi) const {
  SweepShard shard;
  shard.lo = lo;
  shard.hi = hi;
  try {
    for (std::uint64_t c = lo; c < hi; ++c) {
      ++shard.counters.numbers;
      const CValue v = check(c, shard.counters);
      shard.digest += v.hash;
      shard.survivors.insert(shard.survivors.end(), v.survivors.begin(), v.survivors.end());
    }
    shard.status = ShardStatus::done;
  } catch (const std::exception& e) {
    shard.status = ShardStatus::failed;
    shard.error = e.what();
    shard.digest = 0;
    shard.survivors.clear();
  }
  return shard;
}

unsigned sweep_threads(const SweepConfig& config) {
  if (config.threads) return config.threads;
  if (const char* env = std::getenv("EXPDIO_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

namespace {

const char* status_name(ShardStatus s) {
  switch (s) {
    case ShardStatus::pending: return "pending";
    case ShardStatus::done: return "done";
    case ShardStatus::failed: return "failed";
  }
  return "?";
}

ShardStatus status_from(const std::string& s) {
  if (s == "done") return ShardStatus::done;
  if (s == "failed") return ShardStatus::failed;
  return ShardStatus::pending;
}

Json survivor_json(const Survivor& s) {
  return {{"c", s.c}, {"u", s.u.get_str()}, {"v", s.v.get_str()}, {"r", s.r}, {"z", s.z}, {"y", s.y}};
}

Survivor survivor_from(const Json& j) {
  return {j.at("c").get<std::uint64_t>(), BigInt(j.at("u").get<std::string>()), BigInt(j.at("v").get<std::string>()),
          j.at("r").get<unsigned long>(), j.at("z").get<unsigned long>(), j.at("y").get<unsigned long>()};
}

Json shard_json(const SweepShard& s) {
  Json surv = Json::array();
  for (const auto& v : s.survivors) surv.push_back(survivor_json(v));
  return {{"lo", s.lo},           {"hi", s.hi},   {"status", status_name(s.status)}, {"digest", s.digest},
          {"survivors", surv},    {"counters", s.counters.to_json()}, {"error", s.error}};
}

SweepShard shard_from(const Json& j) {
  SweepShard s;
  s.lo = j.at("lo");
  s.hi = j.at("hi");
  s.status = status_from(j.at("status"));
  s.digest = j.at("digest");
  for (const auto& v : j.at("survivors")) s.survivors.push_back(survivor_from(v));
  s.counters = ShardCounters::from_json(j.at("counters"));
  s.error = j.value("error", "");
  return s;
}

void write_atomic(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << text;
  }
  fs::rename(tmp, path);
}

std::vector<SweepShard> partition(std::uint64_t lo, std::uint64_t hi, std::uint64_t size) {
  std::vector<SweepShard> shards;
  for (std::uint64_t a = lo; a < hi; a += size) {
    SweepShard s;
    s.lo = a;
    s.hi = std::min(hi, a + size);
    shards.push_back(s);
  }
  return shards;
}

}  // namespace

Json SweepReport::to_json() const {
  Json surv = Json::array();
  for (const auto& s : survivors) surv.push_back(survivor_json(s));
  return {{"config", config.to_json()},
          {"shards", shards.size()},
          {"digest", digest},
          {"totals", totals.to_json()},
          {"survivors", surv},
          {"quarantined", quarantined},
          {"assumptions", assumptions},
          {"status", verified() ? "verified" : (!survivors.empty() ? "survivors" : "incomplete")}};
}

SweepReport sweep(const SweepConfig& config, bool resume, std::optional<std::size_t> stop_after) {
  config.validate();
  SweepReport report;
  report.config = config;
  report.assumptions = {
      "c a prime power: excluded by the primitive-divisor classification (external)",
      "n >= " + std::to_string(config.n_cap) + ": a >= c^(n/(2 sqrt 3)) and b >= c^(n/(2 sqrt 3)) from a three-logarithm estimate (external)",
      "candidates with r > " + std::to_string(config.r_max) + " or z > " + std::to_string(config.z_max) +
          " are outside the exact-check window"};

  std::unique_ptr<SpfSieve> sieve;
  if (config.c_max <= 100'000'000ULL) sieve = std::make_unique<SpfSieve>(static_cast<std::uint32_t>(config.c_max + 1));
  const SweepWorker worker(config, sieve.get());

  const fs::path state_path = config.output_dir.empty() ? fs::path() : fs::path(config.output_dir) / "sweep_state.json";
  std::vector<SweepShard> shards;
  if (resume) {
    if (state_path.empty() || !fs::exists(state_path)) throw ConfigError("--resume needs an existing state file");
    std::ifstream in(state_path);
    const Json st = Json::parse(in);
    if (st.at("fingerprint") != config.fingerprint()) throw ConfigError("state file belongs to a different configuration");
    for (const auto& s : st.at("shards")) shards.push_back(shard_from(s));
  } else {
    std::uint64_t size = config.shard_size;
    if (size == 0) {
      // Warm-up shard, then shards of about one second each.
      const std::uint64_t warm = std::min<std::uint64_t>(20'000, config.c_max - config.c_min);
      const auto t0 = std::chrono::steady_clock::now();
      SweepShard first = worker.run_shard(config.c_min, config.c_min + warm);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      size = static_cast<std::uint64_t>(std::clamp(warm / std::max(secs, 1e-3), 5'000.0, 2'000'000.0));
      if (warm > 0) shards.push_back(first);
      auto rest = partition(config.c_min + warm, config.c_max, size);
      shards.insert(shards.end(), rest.begin(), rest.end());
    } else {
      shards = partition(config.c_min, config.c_max, size);
    }
  }

  std::mutex mu;
  auto persist = [&] {
    if (state_path.empty()) return;
    fs::create_directories(state_path.parent_path());
    Json st = {{"fingerprint", config.fingerprint()}, {"config", config.to_json()}, {"shards", Json::array()}};
    for (const auto& s : shards) st["shards"].push_back(shard_json(s));
    write_atomic(state_path, st.dump(1));
  };
  persist();

  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < shards.size(); ++i) {
    if (shards[i].status == ShardStatus::pending || shards[i].status == ShardStatus::failed) todo.push_back(i);
  }
  if (stop_after && todo.size() > *stop_after) todo.resize(*stop_after);

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= todo.size()) return;
      SweepShard done = worker.run_shard(shards[todo[k]].lo, shards[todo[k]].hi);
      std::lock_guard<std::mutex> lock(mu);
      shards[todo[k]] = std::move(done);
      persist();
    }
  };
  const unsigned width = std::min<std::size_t>(sweep_threads(config), std::max<std::size_t>(todo.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < width; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  for (const auto& s : shards) {
    if (s.status == ShardStatus::done) {
      report.digest += s.digest;
      report.totals.add(s.counters);
      report.survivors.insert(report.survivors.end(), s.survivors.begin(), s.survivors.end());
    } else {
      report.quarantined.push_back("[" + std::to_string(s.lo) + ", " + std::to_string(s.hi) + ") " +
                                   status_name(s.status) + (s.error.empty() ? "" : ": " + s.error));
    }
  }
  std::sort(report.survivors.begin(), report.survivors.end(), [](const Survivor& a, const Survivor& b) {
    return std::tie(a.c, a.r, a.z) < std::tie(b.c, b.r, b.z);
  });
  report.shards = std::move(shards);
  if (!config.output_dir.empty()) write_atomic(fs::path(config.output_dir) / "sweep_report.json", report.to_json().dump(1));
  return report;
}

Certificate shard_certificate(const SweepConfig& config, const SweepShard& shard) {
  Certificate cert;
  cert.claim = "sweep-shard";
  cert.module = "sweep-cli";
  cert.inputs = {{"lo", shard.lo}, {"hi", shard.hi}};
  Json cfg = config.to_json();
  cfg.erase("output_dir");
  cfg.erase("threads");
  cert.parameters = cfg;
  Json surv = Json::array();
  for (const auto& s : shard.survivors) surv.push_back(survivor_json(s));
  cert.outputs = {{"digest", std::to_string(shard.digest)}, {"survivors", surv}, {"counters", shard.counters.to_json()}};
  cert.step("battery", {{"admissible", shard.counters.admissible}, {"exact_checks", shard.counters.exact_checks}});
  cert.assumptions = {"prime-power c excluded (external)", "n >= n_cap covered by an external three-logarithm estimate"};
  cert.verdict = shard.status != ShardStatus::done ? Verdict::inconclusive
                                                  : (shard.survivors.empty() ? Verdict::pass : Verdict::fail);
  return cert;
}

}  // namespace expdio
