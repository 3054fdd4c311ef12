#include "sri/riskmap.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "sri/errors.hpp"
#include "sri/stats.hpp"

namespace sri {

void MapPolicy::validate() const {
  if (breakpoints.empty()) throw ConfigError("risk map: no breakpoints");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > 0.0 && breakpoints[i] < 1.0))
      throw ConfigError("risk map: breakpoints must lie in (0,1)");
    if (i > 0 && !(breakpoints[i] > breakpoints[i - 1]))
      throw ConfigError("risk map: breakpoints must be strictly increasing");
  }
  if (warmup < 2) throw ConfigError("risk map: warmup must be >= 2");
  if (window == Window::Rolling && rolling_length < warmup)
    throw ConfigError("risk map: rolling window shorter than warmup");
}

namespace {

constexpr std::array<const char*, 4> kQuartileNames = {"GREEN", "LIGHT GREEN",
                                                       "ORANGE", "RED"};
constexpr std::array<const char*, 4> kQuartileHex = {"#2e9e4f", "#a8d08d",
                                                     "#f4a127", "#d23b2e"};

}  // namespace

std::string bucket_label(int bucket, int n_buckets) {
  if (bucket <= 0) return "";
  if (n_buckets == 4) return kQuartileNames[static_cast<std::size_t>(bucket - 1)];
  if (n_buckets == 2) return bucket == 1 ? "GREEN" : "RED";
  if (n_buckets == 3)
    return bucket == 1 ? "GREEN" : (bucket == 2 ? "ORANGE" : "RED");
  return "BUCKET_" + std::to_string(bucket);
}

std::string bucket_hex(int bucket, int n_buckets) {
  if (bucket <= 0) return "#d9d9d9";
  if (n_buckets == 4) return kQuartileHex[static_cast<std::size_t>(bucket - 1)];
  if (n_buckets == 2) return bucket == 1 ? kQuartileHex[0] : kQuartileHex[3];
  if (n_buckets == 3) {
    return bucket == 1 ? kQuartileHex[0]
                       : (bucket == 2 ? kQuartileHex[2] : kQuartileHex[3]);
  }
  // Interpolate the quartile palette endpoints for unusual bucket counts.
  const double f =
      n_buckets > 1 ? static_cast<double>(bucket - 1) / (n_buckets - 1) : 0.0;
  const int r = static_cast<int>(0x2e + f * (0xd2 - 0x2e));
  const int g = static_cast<int>(0x9e + f * (0x3b - 0x9e));
  const int b = static_cast<int>(0x4f + f * (0x2e - 0x4f));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

namespace {

// Sorted multiset over a plain vector: the windows grow one value per day,
// so insertion dominates and binary-search + shift is compact and fast at
// the sizes this engine sees.
void sorted_insert(std::vector<double>& buf, double v) {
  buf.insert(std::upper_bound(buf.begin(), buf.end(), v), v);
}

void sorted_erase(std::vector<double>& buf, double v) {
  auto it = std::lower_bound(buf.begin(), buf.end(), v);
  buf.erase(it);
}

}  // namespace

RiskMap classify(const TimeSeries& indicator, const MapPolicy& policy) {
  policy.validate();
  if (indicator.n_present() < policy.warmup) {
    throw InsufficientHistoryError(
        "risk map: '" + indicator.name() + "' has " +
        std::to_string(indicator.n_present()) + " observations, warmup is " +
        std::to_string(policy.warmup));
  }

  RiskMap map;
  map.indicator = indicator;
  map.policy = policy;
  map.bucket.assign(static_cast<std::size_t>(indicator.size()), 0);

  std::vector<double> window;  // sorted present values currently in scope
  const Eigen::Index n = indicator.size();
  for (Eigen::Index t = 0; t < n; ++t) {
    // Rolling windows drop the value that falls out of the last
    // rolling_length trading days.
    if (policy.window == MapPolicy::Window::Rolling) {
      const Eigen::Index gone = t - policy.rolling_length;
      if (gone >= 0 && !indicator.missing_at(gone))
        sorted_erase(window, indicator.value(gone));
    }

    const double v = indicator.value(t);
    if (!is_missing(v) && !policy.exclude_current) sorted_insert(window, v);

    if (!is_missing(v) &&
        static_cast<int>(window.size()) >= policy.warmup) {
      int b = 1;
      double first_q = 0.0, last_q = 0.0;
      for (std::size_t k = 0; k < policy.breakpoints.size(); ++k) {
        const double q = sorted_quantile(window, policy.breakpoints[k]);
        if (k == 0) first_q = q;
        last_q = q;
        if (q < v) ++b;
      }
      const bool collapsed = policy.breakpoints.size() >= 2
                                 ? first_q == last_q
                                 : window.front() == window.back();
      if (collapsed) ++map.degenerate_windows;
      map.bucket[static_cast<std::size_t>(t)] = b;
      ++map.n_classified;
    }

    if (!is_missing(v) && policy.exclude_current) sorted_insert(window, v);
  }
  return map;
}

std::vector<double> occupancy(const RiskMap& map) {
  if (map.n_classified == 0)
    throw InsufficientDataError("risk map occupancy: no classified dates");
  std::vector<double> freq(static_cast<std::size_t>(map.policy.n_buckets()),
                           0.0);
  for (int b : map.bucket) {
    if (b > 0) freq[static_cast<std::size_t>(b - 1)] += 1.0;
  }
  for (double& f : freq) f /= static_cast<double>(map.n_classified);
  return freq;
}

}  // namespace sri
