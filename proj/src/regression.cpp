#include "sri/regression.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "sri/errors.hpp"
#include "sri/quantile_solver.hpp"
#include "sri/stats.hpp"

namespace sri {

std::string ThresholdSpec::label() const {
  switch (kind) {
    case Kind::None:
      return "all";
    case Kind::Mean:
      return "mean";
    case Kind::Percentile: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", percentile);
      return buf;
    }
  }
  return "all";
}

LaggedDesign build_design(const ReturnSeries& response,
                          const std::vector<ReturnSeries>& predictors,
                          int lags) {
  if (lags < 1) throw ConfigError("build_design: lags must be >= 1");
  if (predictors.empty()) throw ConfigError("build_design: no predictors");
  for (const auto& p : predictors) {
    if (!p.base.same_dates(response.base)) {
      throw AlignmentError("build_design: '" + p.base.name() +
                           "' is not on the response's date index");
    }
  }

  LaggedDesign d;
  d.lag_depth = lags;
  d.labels.push_back("intercept");
  for (const auto& p : predictors) {
    for (int k = 1; k <= lags; ++k)
      d.labels.push_back(p.base.name() + "_lag" + std::to_string(k));
  }
  const auto cols = static_cast<Eigen::Index>(d.labels.size());

  const Eigen::Index n = response.base.size();
  std::vector<double> ys;
  std::vector<double> cells;  // row-major retained rows
  for (Eigen::Index t = lags; t < n; ++t) {
    ++d.rows_candidate;
    const double yt = response.base.value(t);
    std::string missing_cell;
    if (is_missing(yt)) missing_cell = response.base.name();
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(cols));
    row.push_back(1.0);
    for (const auto& p : predictors) {
      for (int k = 1; k <= lags; ++k) {
        const double v = p.base.value(t - k);
        if (is_missing(v) && missing_cell.empty())
          missing_cell = p.base.name() + "_lag" + std::to_string(k);
        row.push_back(v);
      }
    }
    if (!missing_cell.empty()) {
      d.dropped_log.push_back(response.base.date(t).to_string() +
                              ": missing " + missing_cell);
      continue;
    }
    ys.push_back(yt);
    cells.insert(cells.end(), row.begin(), row.end());
    d.row_dates.push_back(response.base.date(t));
  }

  const auto rows = static_cast<Eigen::Index>(ys.size());
  if (rows < cols + 2) {
    throw InsufficientDataError(
        "build_design: " + std::to_string(rows) + " complete rows of " +
        std::to_string(d.rows_candidate) + " candidates; need at least " +
        std::to_string(cols + 2) + " for " + std::to_string(cols) +
        " columns");
  }
  d.y = Eigen::Map<Eigen::VectorXd>(ys.data(), rows);
  d.X = Eigen::Map<
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      cells.data(), rows, cols);
  return d;
}

double adjusted_r2(double r2, Eigen::Index n, Eigen::Index p) {
  if (n <= p + 1) {
    throw DomainError("adjusted_r2: need n > p + 1, have n = " +
                      std::to_string(n) + ", p = " + std::to_string(p));
  }
  return 1.0 - (1.0 - r2) * static_cast<double>(n - 1) /
                   static_cast<double>(n - p - 1);
}

namespace {

void require_full_rank(const Eigen::MatrixXd& X,
                       const std::vector<std::string>& labels,
                       const char* where) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() >= X.cols()) return;
  std::string offenders;
  const auto& perm = qr.colsPermutation().indices();
  for (Eigen::Index j = qr.rank(); j < X.cols(); ++j) {
    if (!offenders.empty()) offenders += ", ";
    offenders += labels[static_cast<std::size_t>(perm[j])];
  }
  throw SingularDesignError(std::string(where) + ": rank " +
                            std::to_string(qr.rank()) + " of " +
                            std::to_string(X.cols()) +
                            " columns; collinear: " + offenders);
}

// Core least-squares shared by ols and the quasi-quantile filter.
RegressionReport ols_core(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          const std::vector<std::string>& labels,
                          int lag_depth) {
  const Eigen::Index n = X.rows();
  const Eigen::Index cols = X.cols();
  require_full_rank(X, labels, "ols");

  const double mean_y = y.mean();
  const double sst = (y.array() - mean_y).matrix().squaredNorm();
  if (!(sst > 0.0)) throw DomainError("ols: constant response");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  Eigen::VectorXd beta = qr.solve(y);
  Eigen::VectorXd e = y - X * beta;

  // The least-squares residual must be orthogonal to the design columns;
  // anything beyond rounding means the solve went wrong.
  const double e_norm = e.norm();
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double dot = std::abs(X.col(j).dot(e));
    const double tol = 1e-8 * X.col(j).norm() * e_norm + 1e-10;
    if (dot > tol) {
      throw InternalConsistencyError(
          "ols: residuals not orthogonal to '" +
          labels[static_cast<std::size_t>(j)] + "' (|x'e| = " +
          std::to_string(dot) + ")");
    }
  }

  RegressionReport rep;
  rep.kind = ModelKind::Ols;
  rep.labels = labels;
  rep.coefficients = std::move(beta);
  rep.n_obs = n;
  rep.r2 = 1.0 - e.squaredNorm() / sst;
  rep.adjusted_r2 = adjusted_r2(rep.r2, n, cols - 1);
  rep.rows_total = n;
  rep.rows_kept = n;
  rep.lag_depth = lag_depth;
  return rep;
}

}  // namespace

RegressionReport ols(const LaggedDesign& design) {
  return ols_core(design.X, design.y, design.labels, design.lag_depth);
}

RegressionReport quasi_quantile_ols(const LaggedDesign& design,
                                    const ThresholdSpec& threshold) {
  double cut = std::numeric_limits<double>::infinity();
  switch (threshold.kind) {
    case ThresholdSpec::Kind::None:
      break;
    case ThresholdSpec::Kind::Mean:
      cut = design.y.mean();
      break;
    case ThresholdSpec::Kind::Percentile: {
      if (!(threshold.percentile > 0.0 && threshold.percentile < 1.0))
        throw ConfigError("quasi-quantile threshold percentile outside (0,1)");
      std::vector<double> ys(design.y.data(), design.y.data() + design.y.size());
      cut = quantile(std::move(ys), threshold.percentile);
      break;
    }
  }

  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < design.y.size(); ++i) {
    if (design.y[i] < cut) keep.push_back(i);
  }
  const auto rows = static_cast<Eigen::Index>(keep.size());
  if (rows < design.X.cols() + 2) {
    throw InsufficientDataError(
        "quasi-quantile filter (threshold " + threshold.label() + " = " +
        std::to_string(cut) + ") kept " + std::to_string(rows) + " of " +
        std::to_string(design.y.size()) + " rows; need at least " +
        std::to_string(design.X.cols() + 2));
  }
  Eigen::MatrixXd Xf(rows, design.X.cols());
  Eigen::VectorXd yf(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    Xf.row(i) = design.X.row(keep[static_cast<std::size_t>(i)]);
    yf[i] = design.y[keep[static_cast<std::size_t>(i)]];
  }

  RegressionReport rep = ols_core(Xf, yf, design.labels, design.lag_depth);
  rep.kind = ModelKind::QuasiQuantile;
  rep.threshold = threshold;
  rep.threshold_value =
      threshold.kind == ThresholdSpec::Kind::None ? kMissing : cut;
  rep.rows_total = design.y.size();
  rep.rows_kept = rows;
  return rep;
}

RegressionReport quantile_regression(const LaggedDesign& design, double tau) {
  if (!(tau > 0.0 && tau < 1.0))
    throw DomainError("quantile_regression: tau must lie in (0,1)");
  require_full_rank(design.X, design.labels, "quantile_regression");

  PinballFit full = minimize_pinball(design.X, design.y, tau);
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(design.y.size(), 1);
  PinballFit restricted = minimize_pinball(ones, design.y, tau);

  RegressionReport rep;
  rep.kind = ModelKind::Quantile;
  rep.labels = design.labels;
  rep.coefficients = full.beta;
  rep.n_obs = design.y.size();
  rep.tau = tau;
  rep.objective = full.objective;
  rep.objective_restricted = restricted.objective;
  rep.pseudo_r2 = pseudo_r2(full.objective, restricted.objective);
  rep.rows_total = design.y.size();
  rep.rows_kept = design.y.size();
  rep.lag_depth = design.lag_depth;
  return rep;
}

double pseudo_r2(double v_full, double v_restricted) {
  if (!(v_restricted > 0.0)) {
    throw DomainError("pseudo_r2: restricted objective must be positive, is " +
                      std::to_string(v_restricted));
  }
  if (v_full > v_restricted * (1.0 + 1e-12)) {
    throw InternalConsistencyError(
        "pseudo_r2: full-model objective " + std::to_string(v_full) +
        " exceeds restricted " + std::to_string(v_restricted) +
        "; the models are nested, so a solver failed");
  }
  return std::clamp(1.0 - v_full / v_restricted, 0.0, 1.0);
}

}  // namespace sri
