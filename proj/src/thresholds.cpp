#include "expdio/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace expdio {

namespace {

constexpr Bits kCurveBits = 128;

unsigned long odd_at_least(unsigned long n) { return n | 1UL; }

using MaybeMu = std::optional<Rational>;

MaybeMu mu_max(const MaybeMu& a, const MaybeMu& b) {
  if (!a || !b) return std::nullopt;
  return std::max(*a, *b);
}

MaybeMu mu_min(const MaybeMu& a, const MaybeMu& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

std::optional<Rational> mu_from_theta(const Interval& theta, unsigned long n, const Interval& log_c) {
  const Bits bits = log_c.bits();
  const Interval nlog = log_c * static_cast<long>(n);
  const Interval th = Interval::from_rational(theta.upper_rational(), bits);
  const Interval clamp = interval_log(Rational(1000), bits) / nlog;
  const Interval worst = th.certainly_ge(clamp) ? th : max(th, clamp);
  const Interval inv = Interval::from_rational(make_rational(1, 2), bits) - worst +
                       interval_log(make_rational(99, 100), bits) / nlog;
  if (!inv.positive()) return std::nullopt;
  return (Interval::from_int(1, bits) / inv).upper_rational();
}

ExponentCurve::ExponentCurve(BigInt c_min, std::optional<Rational> skew, unsigned long cap, SearchGrid grid)
    : c_min_(std::move(c_min)), skew_(std::move(skew)), cap_(odd_at_least(cap)), search_(std::move(grid)) {
  log_c_ = interval_log(Rational(c_min_), kCurveBits);
  for (unsigned long b = 3; b <= cap_;) {
    grid_.push_back(b);
    const double ratio = b < 5000 ? 1.02 : 1.25;
    b = std::max(b + 2, odd_at_least(static_cast<unsigned long>(std::ceil(b * ratio))));
  }
}

std::string ExponentCurve::label() const {
  return "c>=" + c_min_.get_str() + (skew_ ? " ratio<=" + skew_->get_str() : std::string(" ratio any"));
}

const CurveBlock& ExponentCurve::block(unsigned long lo, unsigned long hi) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  hi = std::min(hi, cap_);
  if (lo > hi || lo % 2 == 0 || hi % 2 == 0) throw DomainError("curve blocks are odd ranges lo <= hi");
  auto it = blocks_.find({lo, hi});
  if (it != blocks_.end()) return it->second;
  ++evaluations_;
  CurveBlock blk;
  blk.lo = lo;
  blk.hi = hi;
  const LinearFormInstance inst = regime_form(c_min_, hi, skew_, kCurveBits);
  LaurentOptions options;
  options.block_lo = lo;
  const SearchResult res = param_search(inst, hi, search_, options);
  if (res.found && res.verdict.theta) {
    blk.found = true;
    blk.params = res.params;
    blk.theta = res.verdict.theta->upper();
    blk.mu = mu_from_theta(*res.verdict.theta, lo, log_c_);
  }
  return blocks_.emplace(std::make_pair(lo, hi), std::move(blk)).first->second;
}

std::optional<Rational> ExponentCurve::sup_from(unsigned long n0) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  n0 = odd_at_least(std::max(n0, 3UL));
  const std::size_t last = grid_.size() - 1;
  if (n0 > cap_) return block(grid_[last], cap_).mu;
  auto block_end = [&](std::size_t k) { return k == last ? cap_ : grid_[k + 1] - 2; };
  const std::size_t k = static_cast<std::size_t>(std::upper_bound(grid_.begin(), grid_.end(), n0) - grid_.begin()) - 1;
  // Suffix maxima, filled from the top.
  if (!suffix_.count(last)) suffix_[last] = block(grid_[last], cap_).mu;
  std::size_t j = last;
  while (j > k + 1 && suffix_.count(j - 1)) --j;
  for (; j > k + 1; --j) suffix_[j - 1] = mu_max(block(grid_[j - 1], block_end(j - 1)).mu, suffix_[j]);
  MaybeMu out = block(n0, block_end(k)).mu;
  if (k < last) out = mu_max(out, suffix_[k + 1]);
  return out;
}

std::shared_ptr<ExponentCurve> shared_curve(const BigInt& c_min, const std::optional<Rational>& skew) {
  static std::mutex m;
  static std::map<std::string, std::shared_ptr<ExponentCurve>> cache;
  std::lock_guard<std::mutex> lock(m);
  const std::string key = c_min.get_str() + "|" + (skew ? skew->get_str() : "-");
  auto& slot = cache[key];
  if (!slot) slot = std::make_shared<ExponentCurve>(c_min, skew);
  return slot;
}

namespace {

using Pred = std::function<bool(unsigned long, unsigned long)>;

// Largest odd n in [lo, hi] that pred cannot exclude, 0 if none.
unsigned long max_failing(const Pred& pred, unsigned long lo, unsigned long hi) {
  if (pred(lo, hi)) return 0;
  if (lo == hi) return lo;
  const unsigned long mid = lo + ((hi - lo) / 4) * 2;
  if (unsigned long f = max_failing(pred, mid + 2, hi)) return f;
  return max_failing(pred, lo, mid);
}

// Smallest odd B >= 1 such that every odd n in (B, cap] is excluded.
unsigned long bound_by_scan(ExponentCurve& curve, const Pred& pred) {
  const auto& g = curve.grid();
  for (std::size_t k = g.size(); k-- > 0;) {
    const unsigned long hi = k + 1 == g.size() ? curve.cap() : g[k + 1] - 2;
    if (unsigned long f = max_failing(pred, g[k], hi)) return f;
  }
  return 1;
}

}  // namespace

ThresholdResult exponent_thresholds(const ThresholdScenario& sc) {
  ThresholdResult res;
  res.scenario = sc;
  auto bcurve = shared_curve(sc.c_min, sc.r_skew);
  auto acurve = shared_curve(sc.c_min, sc.z_skew);
  const unsigned long cap = std::min(acurve->cap(), bcurve->cap());
  const long y = static_cast<long>(sc.y_floor);
  const Rational two_y(2 * y);

  res.assumptions.push_back("external: two-logarithm interpolation lemma");
  res.assumptions.push_back("gcd(n, k) <= 4 in condition (II) of every block");
  res.assumptions.push_back("exponents above " + std::to_string(cap) +
                            " are bounded by the last certified block (external three-term estimate)");
  res.assumptions.push_back("bounds computed at c = " + sc.c_min.get_str() + " extend to larger c");

  // Lower bound exponents: b >= c^(r/mu_b), a >= c^(z/mu_a) for every n in the block.
  auto mu_b = [&](unsigned long lo, unsigned long hi) -> MaybeMu {
    MaybeMu m = bcurve->block(lo, hi).mu;
    if (sc.mode == ThresholdMode::b_large) m = mu_min(m, make_rational(2 * static_cast<long>(lo), static_cast<long>(lo) - 1));
    if (sc.mode == ThresholdMode::t_one && static_cast<long>(lo) * y > 8) {
      const long t = y * static_cast<long>(lo);
      m = mu_min(m, make_rational(2 * t, t - 8));
    }
    return m;
  };
  auto sup_b = [&](unsigned long n0) -> MaybeMu {
    MaybeMu m = bcurve->sup_from(n0);
    if (sc.mode == ThresholdMode::b_large) m = mu_min(m, make_rational(2 * static_cast<long>(n0), static_cast<long>(n0) - 1));
    return m;
  };

  if (sc.mode == ThresholdMode::t_one) {
    res.assumptions.push_back("hypothesis: ry/2 = z + 2 and b >= c^(r/2 - 4/y)");
    const Pred pred = [&](unsigned long lo, unsigned long hi) {
      const MaybeMu mb = mu_b(lo, hi);
      const MaybeMu ma = acurve->sup_from(lo * sc.y_floor / 2 - 2);
      return mb && ma && *mb * *ma <= two_y;
    };
    res.r_max = bound_by_scan(*bcurve, pred);
    if (res.r_max >= cap) throw ConditionFailed("no threshold found below cap");
    res.no_solution = res.r_max < 3;
    res.iterations = 1;
    res.trace.push_back("r <= " + std::to_string(res.r_max));
    return res;
  }
  if (sc.mode == ThresholdMode::b_large) res.assumptions.push_back("hypothesis: b >= c^((r-1)/2)");

  unsigned long r_max = cap, z_max = cap;
  for (;;) {
    ++res.iterations;
    const unsigned long zcap = z_max;
    const Pred r_pred = [&](unsigned long lo, unsigned long hi) {
      const MaybeMu mb = mu_b(lo, hi);
      if (!mb) return false;
      // yr < mu_b z forces z beyond the current z bound.
      if (Rational(static_cast<long>(lo) * y) / *mb >= Rational(static_cast<long>(zcap))) return true;
      const MaybeMu ma = acurve->sup_from(lo + 2);
      return ma && *mb * *ma <= two_y;
    };
    const unsigned long new_r = std::min(r_max, bound_by_scan(*bcurve, r_pred));
    const Pred z_pred = [&](unsigned long lo, unsigned long hi) {
      const MaybeMu ma = acurve->block(lo, hi).mu;
      if (!ma) return false;
      if (*ma <= 2) return true;  // 2z < mu_a r <= 2r contradicts z > r
      // Smallest odd r with 2 lo < mu_a r.
      const Rational q = Rational(2 * static_cast<long>(lo)) / *ma;
      unsigned long r_lo = odd_at_least(to_u64(floor(q)) + 1);
      r_lo = std::max(r_lo, 3UL);
      if (r_lo > new_r) return true;
      const MaybeMu mb = sup_b(r_lo);
      return mb && *ma * *mb <= two_y;
    };
    unsigned long new_z = std::min(z_max, bound_by_scan(*acurve, z_pred));
    std::ostringstream line;
    line << "round " << res.iterations << ": r <= " << new_r << ", z <= " << new_z;
    res.trace.push_back(line.str());
    const bool stable = new_r == r_max && new_z == z_max;
    r_max = new_r;
    z_max = new_z;
    if (stable) break;
  }
  if (r_max >= cap || z_max >= cap) throw ConditionFailed("no threshold found below cap");
  res.r_max = r_max;
  res.z_max = z_max;
  res.no_solution = r_max < 3 || z_max < 5;
  return res;
}

unsigned long exponent_threshold(const BigInt& c_min, ThresholdTarget target, unsigned long y_floor) {
  ThresholdScenario sc;
  sc.name = "baseline";
  sc.c_min = c_min;
  sc.y_floor = y_floor;
  const ThresholdResult r = exponent_thresholds(sc);
  return target == ThresholdTarget::r_bound ? r.r_max : r.z_max;
}

const std::vector<PublishedRow>& published_rows() {
  static const std::vector<PublishedRow> rows = {
      {"baseline", 6, 769, 983},    {"baseline", 10, 539, 759},  {"baseline", 14, 461, 681},
      {"baseline", 18, 419, 647},   {"baseline", 22, 395, 627},  {"baseline", 602, 263, 539},
      {"skewed-z", 6, 659, 845},    {"skewed-r", 6, 553, 705},
      {"b-large", 6, 101, 299},     {"b-large", 10, 47, 227},    {"b-large", 14, 31, 209},
      {"b-large", 18, 23, 197},     {"b-large", 22, 19, 189},    {"b-large", 30, 13, 185},
      {"b-large", 50, 7, 161},      {"b-large", 70, 5, 155},     {"b-large", 98, 3, 147},
      {"b-large", 142, 1, 0},
      {"t-one", 6, 101, 0},         {"t-one", 10, 47, 0},        {"t-one", 14, 29, 0},
      {"t-one", 18, 19, 0},         {"t-one", 22, 17, 0},        {"t-one", 26, 13, 0},
      {"t-one", 30, 11, 0},         {"t-one", 38, 9, 0},         {"t-one", 42, 7, 0},
      {"t-one", 50, 5, 0},          {"t-one", 66, 3, 0},         {"t-one", 102, 1, 0},
      {"c-power-of-3", 38, 239, 0}, {"c-power-of-3", 102, 181, 373},
      {"c-power-of-3", 302, 157, 329}, {"c-power-of-3", 602, 149, 319},
  };
  return rows;
}

ThresholdScenario scenario_for(const PublishedRow& row) {
  ThresholdScenario sc;
  sc.name = row.table;
  sc.c_min = BigInt("40000000005");
  sc.y_floor = row.y_floor;
  if (row.table == "skewed-z") sc.z_skew = make_rational(1, 100);
  else if (row.table == "skewed-r") sc.r_skew = make_rational(1, 100);
  else if (row.table == "b-large") sc.mode = ThresholdMode::b_large;
  else if (row.table == "t-one") sc.mode = ThresholdMode::t_one;
  else if (row.table == "c-power-of-3") {
    BigInt p3 = pow(BigInt(3), static_cast<unsigned long>(row.y_floor - 10));
    if (p3 > sc.c_min) sc.c_min = p3;
  } else if (row.table != "baseline") {
    throw ConfigError("unknown table " + row.table);
  }
  return sc;
}

RowComparison compare_row(const PublishedRow& row) {
  RowComparison cmp;
  cmp.published = row;
  cmp.computed = exponent_thresholds(scenario_for(row));
  cmp.r_matches = cmp.computed.r_max == row.r_max;
  cmp.z_matches = row.z_max == 0 || cmp.computed.z_max == row.z_max;
  return cmp;
}

}  // namespace expdio
