#pragma once

#include <Eigen/Core>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sri/dates.hpp"

namespace sri {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) { return std::isnan(v); }

// Date-indexed series of reals. Missing observations are NaN slots, kept
// distinguishable from zero. Dates are strictly increasing; values and dates
// always have the same length. Immutable after construction.
class TimeSeries {
 public:
  TimeSeries() = default;
  TimeSeries(std::string name, std::vector<Date> dates, Eigen::VectorXd values);

  const std::string& name() const { return name_; }
  const std::vector<Date>& dates() const { return dates_; }
  const Eigen::VectorXd& values() const { return values_; }

  Eigen::Index size() const { return values_.size(); }
  bool empty() const { return values_.size() == 0; }
  double value(Eigen::Index i) const { return values_[i]; }
  Date date(Eigen::Index i) const { return dates_[static_cast<std::size_t>(i)]; }
  bool missing_at(Eigen::Index i) const { return is_missing(values_[i]); }

  Eigen::Index n_missing() const;
  Eigen::Index n_present() const { return size() - n_missing(); }

  // Non-missing values in date order.
  std::vector<double> present_values() const;

  TimeSeries renamed(std::string name) const;
  TimeSeries with_values(Eigen::VectorXd values, std::string name) const;

  bool same_dates(const TimeSeries& other) const { return dates_ == other.dates_; }

 private:
  std::string name_;
  std::vector<Date> dates_;
  Eigen::VectorXd values_;
};

enum class ReturnKind { Log, Simple };

// Returns derived from a price series. `horizon` is the number of
// trading-day index steps between the two prices of one return; `overlap`
// distinguishes a return computed every day from one sampled every
// `horizon`-th day.
struct ReturnSeries {
  TimeSeries base;
  ReturnKind kind = ReturnKind::Log;
  int horizon = 1;
  bool overlap = true;
};

enum class AlignPolicy { Intersect, Union };

// Log return at t is ln(P_t / P_{t-h}); simple is P_t / P_{t-h} - 1.
// overlap=true emits one return per date from index h onward; overlap=false
// samples at indices h, 2h, 3h, ... A missing endpoint makes the return
// missing. Log returns require positive prices.
ReturnSeries compute_returns(const TimeSeries& prices, ReturnKind kind,
                             int horizon, bool overlap);

// P_t / max_{s<=t} P_s - 1, in (-1, 0]. The running max skips missing slots.
TimeSeries drawdown(const TimeSeries& prices);

// Places every series on one shared date index. Intersect keeps only dates
// present in all series; Union keeps every date and fills gaps with missing.
std::vector<TimeSeries> align(const std::vector<TimeSeries>& panel,
                              AlignPolicy policy);

// Shifts values back by `steps` index positions: output at t carries the
// input value from t-steps. The first `steps` slots become missing.
TimeSeries lag_series(const TimeSeries& s, int steps);

}  // namespace sri
