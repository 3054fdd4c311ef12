#pragma once

#include <Eigen/Core>
#include <span>
#include <string>
#include <vector>

#include "sri/time_series.hpp"

namespace sri {

// Engine-wide quantile rule: linear interpolation between order statistics
// at zero-based position (n-1)*q. Input must be sorted ascending, NaN-free
// and non-empty.
double sorted_quantile(std::span<const double> sorted, double q);

// Convenience: copies, sorts, applies sorted_quantile. NaN-free input.
double quantile(std::vector<double> values, double q);

// Upper tail of the chi-square distribution with 2 degrees of freedom.
double chi2_survival_2df(double x);

// Descriptive statistics of one series. Quartiles follow the engine-wide
// interpolation rule; skewness is m3/m2^1.5 and kurtosis is excess
// (normal -> 0), both from population moments; stdev uses the n-1 divisor.
// Fields that cannot be computed (too few observations, zero variance) are
// reported missing rather than raising.
struct StatsSummary {
  Eigen::Index nobs = 0;       // non-missing observations used
  Eigen::Index n_missing = 0;  // explicit missing slots
  double min = kMissing;
  double q1 = kMissing;
  double mean = kMissing;
  double median = kMissing;
  double q3 = kMissing;
  double max = kMissing;
  double stdev = kMissing;
  double skewness = kMissing;
  double kurtosis = kMissing;  // excess
  double jb_stat = kMissing;
  double jb_pvalue = kMissing;
};

StatsSummary describe(const TimeSeries& series);

// Pairwise Pearson correlations over pairwise-complete observations.
// lag > 0 shifts the column variable back by that many index steps before
// pairing, so entries(i,j) correlates x_i at t with x_j at t-lag. Cells with
// fewer than 3 complete pairs are missing and noted in diagnostics.
struct CorrelationMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd entries;
  int lag = 0;
  std::vector<std::string> diagnostics;
};

CorrelationMatrix correlation_matrix(const std::vector<TimeSeries>& panel,
                                     int lag = 0);

// Full-sample z-score: (x - mean) / stdev over present values, missing slots
// preserved. Throws InsufficientDataError with fewer than 2 present values
// and DomainError when the series is constant.
TimeSeries standardize(const TimeSeries& series);

}  // namespace sri
