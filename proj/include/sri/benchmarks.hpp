#pragma once

#include <string>
#include <vector>

#include "sri/time_series.hpp"

namespace sri {

// One firm's balance-sheet state for the capital-shortfall computation.
struct FirmSnapshot {
  std::string name;
  double equity = 0.0;  // W: market value of equity, > 0
  double debt = 0.0;    // D: book value of debt, >= 0
  double lrmes = 0.0;   // long-run marginal expected shortfall, in [0,1)
  double k = 0.08;      // prudential capital fraction, in [0,1)

  void validate() const;  // throws DomainError naming the firm
};

// Horizon/threshold metadata under which ingested LRMES values were
// estimated. Not used by any computation here; carried for provenance.
struct DistressThresholds {
  int horizon = 22;          // periods
  double threshold = -0.10;  // market-decline fraction, < 0
};

// Expected capital shortfall k·D − (1−k)·W·(1−lrmes). The equivalent
// quasi-leverage form W·(k·LVG + (1−k)·lrmes − 1) with LVG = (D+W)/W is
// evaluated alongside and must agree to 1e-9 relative, else
// InternalConsistencyError.
double srisk_firm(const FirmSnapshot& s);

// System-level aggregate: sum of positive firm shortfalls only.
double srisk_aggregate(const std::vector<double>& firm_values);

// Average distance-to-default spread and its stress flags.
struct ClevelandResult {
  TimeSeries spread;               // ADD - PDD
  std::vector<bool> major_stress;  // streak of spread < 0.1 reached 3 days
  std::vector<bool> elevated;      // streak of spread < 0.5 >= extended_days
  int extended_days = 20;
};

// ADD is the cross-sectional mean of the banks' distance-to-default values
// available on each date; the spread subtracts the portfolio DD. A date is
// flagged once the consecutive low-spread streak ending at it reaches the
// qualifying length (earlier streak days stay unflagged); a missing spread
// resets the streak. All series must share one date index.
ClevelandResult cleveland_spread(const std::vector<TimeSeries>& banks,
                                 const TimeSeries& pdd,
                                 int extended_days = 20);

// Nonparametric value-at-risk at the given confidence: the negated
// (1-confidence)-quantile of the sample, reported as a positive loss.
// Appends a small-sample diagnostic to `warnings` when fewer than 20
// observations back a 99%+ level.
double var_nonparametric(std::vector<double> returns, double confidence,
                         std::vector<std::string>* warnings = nullptr);

// Fixed published combination of the three standardized VaR measures:
// 0.570·v_gpd + 0.5719·v_sged + 0.5889·v_np. Inputs must already be
// standardized by the caller.
double catfin_combine(double v_gpd, double v_sged, double v_np);

}  // namespace sri
