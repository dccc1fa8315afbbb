#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "expdio/sweep.hpp"

using namespace expdio;
namespace fs = std::filesystem;

namespace {

SweepConfig small(std::uint64_t c_max, unsigned threads = 1) {
  SweepConfig c;
  c.c_min = 85;
  c.c_max = c_max;
  c.threads = threads;
  c.shard_size = 997;
  return c;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("expdio-test-" + name);
  fs::remove_all(p);
  return p;
}

// Runs the CLI, returns {exit status, stdout}.
std::pair<int, std::string> run_cli(const std::string& args) {
  const std::string cmd = std::string(EXPDIO_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_SUITE("sweep-cli") {
  TEST_CASE("config validation") {
    SweepConfig c;
    c.c_min = 84;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = SweepConfig{};
    c.r_max = 770;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = SweepConfig{};
    c.z_max = c.r_max;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    CHECK_THROWS_AS(SweepConfig::from_json(Json{{"c_mn", 85}}), ConfigError);
    CHECK_THROWS_AS(SweepConfig::from_json(Json{{"c_min", "x"}}), ConfigError);
    const SweepConfig round = SweepConfig::from_json(small(1000).to_json());
    CHECK(round.fingerprint() == small(1000).fingerprint());
  }

  TEST_CASE("c = 85 has two representations and no survivor") {
    const SweepConfig c = small(86);
    ShardCounters counters;
    const CValue v = SweepWorker(c).check(85, counters);
    CHECK(v.admissible);
    CHECK(v.reps.size() == 2);
    CHECK(v.survivors.empty());
    const SweepReport rep = sweep(c);
    CHECK(rep.verified());
    CHECK(rep.totals.representations == 2);
  }

  TEST_CASE("empty range") {
    SweepConfig c = small(85);
    const SweepReport rep = sweep(c);
    CHECK(rep.shards.empty());
    CHECK(rep.totals.numbers == 0);
    CHECK(rep.survivors.empty());
  }

  TEST_CASE("no small solutions, checked directly") {
    // Oracle: c^z - a^2 is never a power of b for odd 3 <= r < z <= 15, c < 3000.
    for (std::uint64_t c = 85; c < 3000; c += 8) {
      if (!residue_class_filter(from_u64(c))) continue;
      for (const auto& rep : cornacchia_all(from_u64(c))) {
        for (unsigned long r = 3; r <= 13; r += 2) {
          const SolutionWitness w = witness_from(rep, r);
          for (unsigned long z = r + 2; z <= 15; z += 2) {
            BigInt t = pow(from_u64(c), z) - w.a * w.a;
            if (t <= 0 || w.b < 2) continue;
            while (t % w.b == 0) t /= w.b;
            CHECK_MESSAGE(t != 1, "c=" << c << " r=" << r << " z=" << z);
          }
        }
      }
    }
    CHECK(sweep(small(3000)).verified());
  }

  TEST_CASE("digest does not depend on the number of threads") {
    const auto one = sweep(small(30'000, 1));
    const auto four = sweep(small(30'000, 4));
    const auto sixteen = sweep(small(30'000, 16));
    CHECK(one.digest == four.digest);
    CHECK(one.digest == sixteen.digest);
    CHECK(one.totals.exact_checks == sixteen.totals.exact_checks);
  }

  TEST_CASE("digest does not depend on shard boundaries") {
    SweepConfig a = small(20'000), b = small(20'000);
    a.shard_size = 1000;
    b.shard_size = 3331;
    CHECK(sweep(a).digest == sweep(b).digest);
  }

  TEST_CASE("resume gives the uninterrupted report") {
    SweepConfig c = small(20'000);
    c.output_dir = scratch("resume").string();
    const SweepReport partial = sweep(c, false, 4);
    CHECK_FALSE(partial.complete());
    CHECK(partial.exit_code() == 2);
    const SweepReport resumed = sweep(c, true);
    SweepConfig plain = small(20'000);
    const SweepReport full = sweep(plain);
    CHECK(resumed.digest == full.digest);
    CHECK(resumed.verified());
    CHECK(fs::exists(fs::path(c.output_dir) / "sweep_report.json"));
    // A different configuration cannot resume this state.
    SweepConfig other = c;
    other.c_max = 30'000;
    CHECK_THROWS_AS(sweep(other, true), ConfigError);
    fs::remove_all(c.output_dir);
  }

  TEST_CASE("resume needs a state file") {
    SweepConfig c = small(1000);
    c.output_dir = scratch("missing").string();
    CHECK_THROWS_AS(sweep(c, true), ConfigError);
  }

  TEST_CASE("failed shards are quarantined, never verified") {
    SweepConfig c;
    c.c_min = 1'000'000'000'000ULL;
    c.c_max = c.c_min + 2000;
    c.shard_size = 500;
    c.rho_iterations = 1;
    c.threads = 1;
    const SweepReport rep = sweep(c);
    CHECK_FALSE(rep.quarantined.empty());
    CHECK_FALSE(rep.verified());
    CHECK(rep.exit_code() == 2);
  }

  TEST_CASE("thread override from the environment") {
    SweepConfig c;
    setenv("EXPDIO_THREADS", "3", 1);
    CHECK(sweep_threads(c) == 3);
    c.threads = 2;
    CHECK(sweep_threads(c) == 2);
    unsetenv("EXPDIO_THREADS");
  }

  TEST_CASE("fnv1a64 reference values") {
    CHECK(fnv1a64("") == 14695981039346656037ULL);
    CHECK(fnv1a64("a") == 12638187200555641996ULL);
  }

  TEST_CASE("cli decompose and witness") {
    auto [code, out] = run_cli("decompose 85");
    CHECK(code == 0);
    CHECK(out == "2 9 / 6 7\n");
    std::tie(code, out) = run_cli("witness 2 1 3");
    CHECK(code == 0);
    CHECK(out == "a=2 b=11 c=5 check=OK\n");
  }

  TEST_CASE("cli exit codes") {
    CHECK(run_cli("sweep --config /nonexistent/config.json").first == 3);
    CHECK(run_cli("laurent --b1 771").first == 3);
    CHECK(run_cli("decompose").first == 3);
    CHECK(run_cli("witness 4 2 3").first == 3);
    CHECK(run_cli("dls 6 5 3").first == 2);  // inconclusive
    CHECK(run_cli("laurent --b1 771 --params L=8,rho=7.7,mu=0.56,m=0.1166,R1=4,S1=2").first == 1);
    const fs::path cfg = scratch("cfg.json");
    {
      std::ofstream out(cfg);
      out << R"({"c_min": 85, "c_max": 2000, "threads": 1})";
    }
    auto [code, out] = run_cli("sweep --config " + cfg.string());
    CHECK(code == 0);
    CHECK(Json::parse(out)["status"] == "verified");
    fs::remove(cfg);
  }

  TEST_CASE("shard certificate") {
    const SweepConfig c = small(2000);
    const SweepShard shard = SweepWorker(c).run_shard(85, 2000);
    const Certificate cert = shard_certificate(c, shard);
    CHECK(cert.verdict == Verdict::pass);
    CHECK(validate_certificate(to_json(cert)).empty());
    CHECK(replay(cert).ok);
  }
}
