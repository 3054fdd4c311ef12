#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "sri/time_series.hpp"

namespace sri {

// Regression-ready matrix pairing each response value with lagged predictor
// observations. Column 0 of X is the intercept; the remaining columns hold,
// predictor-major, lags 1..lag_depth of each predictor. Rows with any
// missing cell are dropped and logged.
struct LaggedDesign {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
  int lag_depth = 0;
  std::vector<Date> row_dates;       // dates of the retained y rows
  std::vector<std::string> labels;   // one per X column
  std::vector<std::string> dropped_log;
  Eigen::Index rows_candidate = 0;   // rows examined before the filter
};

// Builds the design from pre-aligned return series (identical date indexes
// required). Lags count observation steps of the series, so overlapping
// weekly returns lag by days and non-overlapping ones by weeks. Throws
// InsufficientDataError when fewer than cols+2 complete rows survive.
LaggedDesign build_design(const ReturnSeries& response,
                          const std::vector<ReturnSeries>& predictors,
                          int lags);

enum class ModelKind { Ols, QuasiQuantile, Quantile };

// Response filter of the quasi-quantile model: keep rows with y strictly
// below a threshold computed on the full response sample.
struct ThresholdSpec {
  enum class Kind { None, Mean, Percentile };
  Kind kind = Kind::None;
  double percentile = kMissing;  // in (0,1) when kind == Percentile

  static ThresholdSpec none() { return {}; }
  static ThresholdSpec mean() { return {Kind::Mean, kMissing}; }
  static ThresholdSpec pct(double q) { return {Kind::Percentile, q}; }

  std::string label() const;  // "all", "mean", or the percentile e.g. "0.05"
};

struct RegressionReport {
  ModelKind kind = ModelKind::Ols;
  std::vector<std::string> labels;
  Eigen::VectorXd coefficients;
  Eigen::Index n_obs = 0;
  double r2 = kMissing;
  double adjusted_r2 = kMissing;
  // Quantile-fit fields.
  double tau = kMissing;
  double pseudo_r2 = kMissing;
  double objective = kMissing;             // achieved pinball loss
  double objective_restricted = kMissing;  // intercept-only pinball loss
  // Quasi-quantile filter metadata.
  ThresholdSpec threshold;
  double threshold_value = kMissing;
  Eigen::Index rows_total = 0;
  Eigen::Index rows_kept = 0;
  int lag_depth = 0;
};

// Least squares with adjusted R². Throws SingularDesignError naming the
// collinear columns on rank deficiency and DomainError on a constant
// response. Residuals are verified orthogonal to every design column.
RegressionReport ols(const LaggedDesign& design);

// 1 − (1 − R²)(n − 1)/(n − p − 1); p counts slope parameters only.
// Requires n > p + 1.
double adjusted_r2(double r2, Eigen::Index n, Eigen::Index p);

// OLS restricted to rows where y lies strictly below the threshold (computed
// over the full sample of y). The None threshold keeps every row and matches
// plain ols exactly.
RegressionReport quasi_quantile_ols(const LaggedDesign& design,
                                    const ThresholdSpec& threshold);

// Pinball-loss minimization at quantile tau with the Koenker–Machado
// goodness of fit 1 − V̂/Ṽ against the intercept-only fit.
RegressionReport quantile_regression(const LaggedDesign& design, double tau);

// 1 − v_full/v_restricted, clamped of numerical dust into [0,1]. Throws when
// v_restricted is not positive or nesting is violated beyond tolerance.
double pseudo_r2(double v_full, double v_restricted);

}  // namespace sri
