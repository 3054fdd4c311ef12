#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "sri/time_series.hpp"

namespace sri {

// Capitalization-derived market weights: weights_i = caps_i / Σ caps.
struct MarketWeights {
  std::vector<std::string> labels;
  std::vector<double> caps;
  Eigen::VectorXd weights;
};

// Normalizes positive capitalizations into fractions summing to 1. Labels are
// optional; when omitted they default to market_1, market_2, ... Throws
// DomainError naming the offending market on a non-positive cap.
MarketWeights cap_weights(std::vector<double> caps,
                          std::vector<std::string> labels = {});

// Convex mix between the implied and realized legs: w_iv + w_rv = 1.
struct MixWeights {
  double w_iv = 0.5;
  double w_rv = 0.5;

  static MixWeights make(double w_iv, double w_rv);
  static MixWeights iv_share(double w_iv) { return make(w_iv, 1.0 - w_iv); }
};

// Pointwise weighted sum of aligned series. A date where any input is missing
// is missing in the output (weights are never renormalized over the present
// subset). Throws ConfigError on a length mismatch and AlignmentError when
// the series do not share one date index.
TimeSeries weighted_composite(const std::vector<TimeSeries>& series,
                              const MarketWeights& weights, std::string name);

// Country-level indicator: w_iv·IV_t + w_rv·RV_t pointwise. Both inputs must
// share one date index and be expressed in the same units; with check_units
// enabled, a median-magnitude ratio above 25x raises ConfigError (the classic
// symptom of percent-point IV mixed with decimal RV).
TimeSeries ivrvsri_country(const TimeSeries& iv, const TimeSeries& rv,
                           const MixWeights& mix, std::string name,
                           bool check_units = true);

// Full indicator family on one shared date index.
struct IndicatorSet {
  std::vector<std::string> markets;
  std::vector<TimeSeries> iv;       // per market, percent points
  std::vector<TimeSeries> rv;       // per market, same units as iv
  std::vector<TimeSeries> country;  // per-market IVRVSRI
  TimeSeries ivsri;
  TimeSeries rvsri;
  TimeSeries global;
  MarketWeights weights;
  MixWeights mix;
};

// Aligns the per-market IV/RV series onto the union of their dates and
// composes every derived series. The global series is computed as the mix of
// the IVSRI/RVSRI composites and cross-checked against the cap-weighted sum
// of country indicators (the two are algebraically identical for a shared
// mix); a max-abs discrepancy above 1e-10 raises InternalConsistencyError.
IndicatorSet build_indicator_set(std::vector<TimeSeries> iv,
                                 std::vector<TimeSeries> rv,
                                 const MarketWeights& weights,
                                 const MixWeights& mix,
                                 bool check_units = true);

// Recomputes the global series from an existing set (both compositions, with
// the same consistency check) and returns the mix-of-composites form.
TimeSeries ivrvsri_global(const IndicatorSet& indicators);

}  // namespace sri
