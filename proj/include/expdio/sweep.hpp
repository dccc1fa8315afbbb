#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expdio/certificate.hpp"
#include "expdio/factor.hpp"
#include "expdio/representations.hpp"

namespace expdio {

struct SweepConfig {
  std::uint64_t c_min = 85;
  std::uint64_t c_max = 10'000'000;  // exclusive
  unsigned long r_max = 769;
  unsigned long z_max = 983;
  unsigned long n_cap = 55'000;      // angle checks cover n < n_cap
  unsigned long y_max = 1778;        // y menu: 6 <= y < y_max, y = 2 mod 4
  std::uint64_t rho_iterations = 4'000'000;
  unsigned threads = 0;              // 0: EXPDIO_THREADS or hardware
  std::uint64_t shard_size = 0;      // 0: tuned on a warm-up shard
  std::string output_dir;            // empty: no persistence

  Json to_json() const;
  static SweepConfig from_json(const Json& j);  // throws ConfigError
  void validate() const;                        // throws ConfigError
  std::string fingerprint() const;
};

struct Survivor {
  std::uint64_t c = 0;
  BigInt u, v;
  unsigned long r = 0, z = 0, y = 0;
  std::string str() const;
};

struct ShardCounters {
  std::uint64_t numbers = 0;        // integers in range
  std::uint64_t admissible = 0;     // passed the residue-class filter
  std::uint64_t representations = 0;
  std::uint64_t failing_blocks = 0;  // continued-fraction blocks needing per-n checks
  std::uint64_t per_n_checks = 0;
  std::uint64_t exact_checks = 0;

  void add(const ShardCounters& o);
  Json to_json() const;
  static ShardCounters from_json(const Json& j);
};

enum class ShardStatus { pending, done, failed };

struct SweepShard {
  std::uint64_t lo = 0, hi = 0;  // [lo, hi)
  ShardStatus status = ShardStatus::pending;
  std::uint64_t digest = 0;
  std::vector<Survivor> survivors;
  ShardCounters counters;
  std::string error;
};

/// Result of running the battery on one c.
struct CValue {
  std::uint64_t c = 0;
  bool admissible = false;
  std::vector<Representation> reps;
  std::vector<Survivor> survivors;
  std::uint64_t hash = 0;  // order-independent digest contribution
};

class SweepWorker {
 public:
  explicit SweepWorker(const SweepConfig& config, const SpfSieve* sieve = nullptr);
  CValue check(std::uint64_t c, ShardCounters& counters) const;
  SweepShard run_shard(std::uint64_t lo, std::uint64_t hi) const;

 private:
  SweepConfig config_;
  const SpfSieve* sieve_;
};

struct SweepReport {
  SweepConfig config;
  std::vector<SweepShard> shards;
  std::uint64_t digest = 0;
  ShardCounters totals;
  std::vector<Survivor> survivors;
  std::vector<std::string> quarantined;
  std::vector<std::string> assumptions;
  bool complete() const { return quarantined.empty(); }
  bool verified() const { return complete() && survivors.empty(); }
  int exit_code() const { return !survivors.empty() ? 1 : (complete() ? 0 : 2); }
  Json to_json() const;
};

/// Runs (or resumes) the sweep; shard state is persisted under output_dir.
/// stop_after limits the number of shards processed in this call (testing resume).
SweepReport sweep(const SweepConfig& config, bool resume = false,
                  std::optional<std::size_t> stop_after = std::nullopt);

unsigned sweep_threads(const SweepConfig& config);
std::uint64_t fnv1a64(const std::string& s);

Certificate shard_certificate(const SweepConfig& config, const SweepShard& shard);

}  // namespace expdio
