#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "expdio/laurent.hpp"

namespace expdio {

/// Certified exponent data for one odd range [lo, hi] of b1.
struct CurveBlock {
  unsigned long lo = 0, hi = 0;
  bool found = false;
  LaurentParams params;
  double theta = 0;               // upper end of the certified exponent
  std::optional<Rational> mu;     // x >= c^(n/mu) for every n in the block; empty: no bound
};

/// Lower bounds x >= c^(n/mu(n)) for every c >= c_min, where x is the
/// coordinate controlled by the linear form (b for b1 = r, a for b1 = z).
class ExponentCurve {
 public:
  ExponentCurve(BigInt c_min, std::optional<Rational> skew, unsigned long cap = 1'000'000,
                SearchGrid grid = SearchGrid::coarse());

  const BigInt& c_min() const { return c_min_; }
  const std::optional<Rational>& skew() const { return skew_; }
  unsigned long cap() const { return cap_; }

  const CurveBlock& block(unsigned long lo, unsigned long hi);
  const CurveBlock& point(unsigned long n) { return block(n, n); }
  /// Upper bound for mu over all odd n >= n0 (beyond the cap the last block is reused).
  std::optional<Rational> sup_from(unsigned long n0);
  /// Odd block boundaries used for suffix suprema and top-down scans.
  const std::vector<unsigned long>& grid() const { return grid_; }
  std::size_t evaluations() const { return evaluations_; }
  std::string label() const;

 private:
  BigInt c_min_;
  std::optional<Rational> skew_;
  unsigned long cap_;
  SearchGrid search_;
  Interval log_c_;
  std::vector<unsigned long> grid_;
  std::map<std::pair<unsigned long, unsigned long>, CurveBlock> blocks_;
  std::map<std::size_t, std::optional<Rational>> suffix_;
  std::size_t evaluations_ = 0;
  std::recursive_mutex mu_;
};

/// Shared curves keyed by (c_min, skew).
std::shared_ptr<ExponentCurve> shared_curve(const BigInt& c_min, const std::optional<Rational>& skew);

enum class ThresholdMode {
  standard,  // Laurent bounds on both a and b
  b_large,   // b >= c^((r-1)/2)
  t_one,     // ry/2 = z + 2 and b >= c^(r/2 - 4/y)
};

struct ThresholdScenario {
  std::string name;
  BigInt c_min;
  unsigned long y_floor = 6;
  std::optional<Rational> r_skew;  // ratio bound entering the b1 = r form
  std::optional<Rational> z_skew;  // ratio bound entering the b1 = z form
  ThresholdMode mode = ThresholdMode::standard;
};

struct ThresholdResult {
  ThresholdScenario scenario;
  unsigned long r_max = 0;      // 1: no odd r >= 3 survives
  unsigned long z_max = 0;      // 0: not bounded by this scenario
  bool no_solution = false;
  unsigned iterations = 0;
  std::vector<std::string> assumptions;
  std::vector<std::string> trace;
};

ThresholdResult exponent_thresholds(const ThresholdScenario& scenario);

enum class ThresholdTarget { r_bound, z_bound };

/// Smallest odd B with every odd n > B excluded; throws ConditionFailed past the cap.
unsigned long exponent_threshold(const BigInt& c_min, ThresholdTarget target, unsigned long y_floor);

/// 1/mu = 1/2 + min(-theta, -log(1000)/(n log c)) + log(0.99)/(n log c), rounded to a safe rational.
std::optional<Rational> mu_from_theta(const Interval& theta, unsigned long n, const Interval& log_c);

struct PublishedRow {
  std::string table;
  unsigned long y_floor = 0;
  unsigned long r_max = 0;  // 1: "no solution"
  unsigned long z_max = 0;  // 0: not printed
};

const std::vector<PublishedRow>& published_rows();
ThresholdScenario scenario_for(const PublishedRow& row);

struct RowComparison {
  PublishedRow published;
  ThresholdResult computed;
  bool r_matches = false, z_matches = false;
};

RowComparison compare_row(const PublishedRow& row);

}  // namespace expdio
