#include "sri/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "sri/errors.hpp"

namespace sri {

TimeSeries::TimeSeries(std::string name, std::vector<Date> dates,
                       Eigen::VectorXd values)
    : name_(std::move(name)), dates_(std::move(dates)), values_(std::move(values)) {
  if (static_cast<Eigen::Index>(dates_.size()) != values_.size()) {
    throw ConfigError("series '" + name_ + "': " + std::to_string(dates_.size()) +
                      " dates vs " + std::to_string(values_.size()) + " values");
  }
  for (std::size_t i = 1; i < dates_.size(); ++i) {
    if (!(dates_[i - 1] < dates_[i])) {
      throw ConfigError("series '" + name_ + "': dates not strictly increasing at " +
                        dates_[i].to_string());
    }
  }
}

Eigen::Index TimeSeries::n_missing() const {
  Eigen::Index n = 0;
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (is_missing(values_[i])) ++n;
  }
  return n;
}

std::vector<double> TimeSeries::present_values() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (Eigen::Index i = 0; i < size(); ++i) {
    if (!is_missing(values_[i])) out.push_back(values_[i]);
  }
  return out;
}

TimeSeries TimeSeries::renamed(std::string name) const {
  return TimeSeries(std::move(name), dates_, values_);
}

TimeSeries TimeSeries::with_values(Eigen::VectorXd values, std::string name) const {
  return TimeSeries(std::move(name), dates_, std::move(values));
}

namespace {

double one_return(double p_now, double p_then, ReturnKind kind, const Date& at) {
  if (is_missing(p_now) || is_missing(p_then)) return kMissing;
  if (kind == ReturnKind::Log) {
    if (p_now <= 0.0 || p_then <= 0.0) {
      throw DomainError("non-positive price in log return at " + at.to_string());
    }
    return std::log(p_now / p_then);
  }
  return p_now / p_then - 1.0;
}

}  // namespace

ReturnSeries compute_returns(const TimeSeries& prices, ReturnKind kind,
                             int horizon, bool overlap) {
  if (horizon < 1) throw ConfigError("return horizon must be >= 1");
  if (prices.n_present() < horizon + 1) {
    throw InsufficientHistoryError(
        "series '" + prices.name() + "': need at least " +
        std::to_string(horizon + 1) + " non-missing prices, have " +
        std::to_string(prices.n_present()));
  }
  const Eigen::Index n = prices.size();
  std::vector<Date> dates;
  std::vector<double> vals;
  for (Eigen::Index t = horizon; t < n; overlap ? ++t : t += horizon) {
    dates.push_back(prices.date(t));
    vals.push_back(one_return(prices.value(t), prices.value(t - horizon), kind,
                              prices.date(t)));
  }
  Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(vals.data(),
                                                  static_cast<Eigen::Index>(vals.size()));
  TimeSeries base("r_" + prices.name(), std::move(dates), std::move(v));
  return ReturnSeries{std::move(base), kind, horizon, overlap};
}

TimeSeries drawdown(const TimeSeries& prices) {
  if (prices.n_present() < 1) {
    throw InsufficientHistoryError("series '" + prices.name() +
                                   "': no prices to draw down");
  }
  Eigen::VectorXd out(prices.size());
  double running_max = kMissing;
  for (Eigen::Index t = 0; t < prices.size(); ++t) {
    const double p = prices.value(t);
    if (is_missing(p)) {
      out[t] = kMissing;
      continue;
    }
    if (p <= 0.0) {
      throw DomainError("non-positive price in drawdown at " +
                        prices.date(t).to_string());
    }
    running_max = is_missing(running_max) ? p : std::max(running_max, p);
    out[t] = p / running_max - 1.0;
  }
  return prices.with_values(std::move(out), "dd_" + prices.name());
}

std::vector<TimeSeries> align(const std::vector<TimeSeries>& panel,
                              AlignPolicy policy) {
  if (panel.empty()) throw ConfigError("align: empty panel");

  std::vector<Date> index;
  if (policy == AlignPolicy::Union) {
    std::set<Date> all;
    for (const auto& s : panel) all.insert(s.dates().begin(), s.dates().end());
    index.assign(all.begin(), all.end());
  } else {
    // Count how many series contain each date; keep those present in all.
    std::unordered_map<std::int32_t, std::size_t> hits;
    for (const auto& s : panel) {
      for (const auto& d : s.dates()) ++hits[d.ymd];
    }
    for (const auto& d : panel.front().dates()) {
      if (hits[d.ymd] == panel.size()) index.push_back(d);
    }
    if (index.empty()) {
      std::string names;
      for (const auto& s : panel) names += (names.empty() ? "" : ", ") + s.name();
      throw AlignmentError("align: no common dates across [" + names + "]");
    }
  }

  std::vector<TimeSeries> out;
  out.reserve(panel.size());
  for (const auto& s : panel) {
    std::unordered_map<std::int32_t, Eigen::Index> where;
    where.reserve(s.dates().size());
    for (Eigen::Index i = 0; i < s.size(); ++i) where[s.date(i).ymd] = i;
    Eigen::VectorXd v(static_cast<Eigen::Index>(index.size()));
    for (std::size_t i = 0; i < index.size(); ++i) {
      auto it = where.find(index[i].ymd);
      v[static_cast<Eigen::Index>(i)] =
          it == where.end() ? kMissing : s.value(it->second);
    }
    out.emplace_back(s.name(), index, std::move(v));
  }
  return out;
}

TimeSeries lag_series(const TimeSeries& s, int steps) {
  if (steps < 0) throw ConfigError("lag_series: negative lag");
  Eigen::VectorXd v(s.size());
  for (Eigen::Index t = 0; t < s.size(); ++t) {
    v[t] = t < steps ? kMissing : s.value(t - steps);
  }
  return s.with_values(std::move(v), s.name() + "_lag" + std::to_string(steps));
}

}  // namespace sri
