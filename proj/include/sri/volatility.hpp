#pragma once

#include <vector>

#include "sri/time_series.hpp"

namespace sri {

// Rolling realized-volatility estimator settings. The defaults annualize a
// one-month (21 trading day) window of daily log returns by 252 days/year.
struct RVParams {
  int window = 21;
  double annualization = 252.0;
};

// Annualized realized volatility in decimal units (0.20 = 20%). The value at
// date t uses the `window` one-day log returns ending at t; dates without a
// full run of present prices are missing. Throws DomainError (with the date)
// when a non-positive price enters a return.
TimeSeries realized_vol(const TimeSeries& prices, const RVParams& params = {});

// One expiry slice of an out-of-the-money option chain.
struct OptionChainSlice {
  double expiry_fraction = 0.0;  // T, in years
  double risk_free = 0.0;        // continuously-compounded annual rate
  double forward = 0.0;          // forward index level
  std::vector<double> strikes;   // strictly increasing, positive
  std::vector<double> quotes;    // mid prices >= 0, aligned with strikes
  std::size_t k0 = 0;            // largest index with strikes[k0] <= forward

  // Validates the fields and locates k0. Throws DomainError on malformed
  // inputs and DegenerateChainError when no strike lies at or below the
  // forward.
  static OptionChainSlice make(double expiry_fraction, double risk_free,
                               double forward, std::vector<double> strikes,
                               std::vector<double> quotes);
};

// Model-free implied volatility index level (percent points, i.e. 100·σ) from
// the discrete variance strip
//   σ² = (2/T) Σ ΔK_i/K_i² e^{RT} Q(K_i) − (1/T)(F/K_{k0} − 1)².
// Interior ΔK_i is half the distance between neighbouring strikes; boundary
// strikes use the one-sided distance. Throws DegenerateChainError when the
// strip produces σ² < 0 and DomainError when T ≤ 0.
double implied_variance_index(const OptionChainSlice& slice);

}  // namespace sri
