#pragma once

#include <string>
#include <vector>

#include "sri/time_series.hpp"

namespace sri {

// Dynamic quantile-bucket classification policy. Breakpoints are cumulative
// probabilities splitting history into len(breakpoints)+1 buckets; the
// window supplies the history those quantiles are computed from.
struct MapPolicy {
  enum class Window { Expanding, Rolling };

  std::vector<double> breakpoints{0.25, 0.5, 0.75};
  Window window = Window::Expanding;
  int rolling_length = 0;  // trading days; required when window == Rolling
  int warmup = 252;        // minimum non-missing history before classifying
  bool exclude_current = false;  // drop the current value from the window

  int n_buckets() const { return static_cast<int>(breakpoints.size()) + 1; }
  void validate() const;  // throws ConfigError on violations
};

// Classified indicator: bucket[i] in 1..n_buckets, or 0 while unclassified
// (warmup, missing value, or an empty window).
struct RiskMap {
  TimeSeries indicator;
  std::vector<int> bucket;
  MapPolicy policy;
  Eigen::Index n_classified = 0;
  Eigen::Index degenerate_windows = 0;  // windows whose breakpoints all tied
};

// Human label for a bucket, e.g. GREEN / LIGHT GREEN / ORANGE / RED when the
// map has four buckets. Bucket 0 renders as an empty string.
std::string bucket_label(int bucket, int n_buckets);

// Fill color for chart output, matching bucket_label's palette.
std::string bucket_hex(int bucket, int n_buckets);

// For each date with enough history, computes the breakpoint quantiles of
// the window ending at that date (inclusive of the current value unless the
// policy excludes it) and assigns bucket k+1 where k breakpoint quantiles lie
// strictly below the value: intervals are left-open, right-closed, and exact
// ties fall to the lowest qualifying bucket.
RiskMap classify(const TimeSeries& indicator, const MapPolicy& policy);

// Fraction of classified dates falling in each bucket, summing to 1. Throws
// InsufficientDataError when nothing is classified.
std::vector<double> occupancy(const RiskMap& map);

}  // namespace sri
