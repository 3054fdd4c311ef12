#include "sri/benchmarks.hpp"

#include <algorithm>
#include <cmath>

#include "sri/errors.hpp"
#include "sri/stats.hpp"

namespace sri {

void FirmSnapshot::validate() const {
  if (!(equity > 0.0))
    throw DomainError("firm '" + name + "': equity must be positive");
  if (!(debt >= 0.0))
    throw DomainError("firm '" + name + "': debt must be non-negative");
  if (!(lrmes >= 0.0 && lrmes < 1.0))
    throw DomainError("firm '" + name + "': lrmes must lie in [0,1)");
  if (!(k >= 0.0 && k < 1.0))
    throw DomainError("firm '" + name + "': capital fraction must lie in [0,1)");
}

double srisk_firm(const FirmSnapshot& s) {
  s.validate();
  const double direct = s.k * s.debt - (1.0 - s.k) * s.equity * (1.0 - s.lrmes);
  const double lvg = (s.debt + s.equity) / s.equity;
  const double via_leverage =
      s.equity * (s.k * lvg + (1.0 - s.k) * s.lrmes - 1.0);
  const double scale = std::max({1.0, std::abs(direct), std::abs(via_leverage)});
  if (std::abs(direct - via_leverage) > 1e-9 * scale) {
    throw InternalConsistencyError(
        "srisk_firm '" + s.name + "': shortfall forms disagree (" +
        std::to_string(direct) + " vs " + std::to_string(via_leverage) + ")");
  }
  return direct;
}

double srisk_aggregate(const std::vector<double>& firm_values) {
  double total = 0.0;
  for (double v : firm_values) total += std::max(v, 0.0);
  return total;
}

ClevelandResult cleveland_spread(const std::vector<TimeSeries>& banks,
                                 const TimeSeries& pdd, int extended_days) {
  if (banks.empty()) throw ConfigError("cleveland_spread: no bank series");
  if (extended_days < 1)
    throw ConfigError("cleveland_spread: extended_days must be >= 1");
  for (const auto& b : banks) {
    if (!b.same_dates(pdd))
      throw AlignmentError("cleveland_spread: '" + b.name() +
                           "' is not on the portfolio series' date index");
  }

  const Eigen::Index n = pdd.size();
  Eigen::VectorXd spread(n);
  for (Eigen::Index t = 0; t < n; ++t) {
    double sum = 0.0;
    int avail = 0;
    for (const auto& b : banks) {
      const double dd = b.value(t);
      if (is_missing(dd)) continue;
      sum += dd;
      ++avail;
    }
    const double p = pdd.value(t);
    spread[t] = (avail == 0 || is_missing(p))
                    ? kMissing
                    : sum / static_cast<double>(avail) - p;
  }

  ClevelandResult res;
  res.spread = pdd.with_values(std::move(spread), "cleveland_spread");
  res.extended_days = extended_days;
  res.major_stress.assign(static_cast<std::size_t>(n), false);
  res.elevated.assign(static_cast<std::size_t>(n), false);

  int run_major = 0, run_elevated = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double s = res.spread.value(t);
    if (is_missing(s)) {
      run_major = 0;
      run_elevated = 0;
      continue;
    }
    run_major = s < 0.1 ? run_major + 1 : 0;
    run_elevated = s < 0.5 ? run_elevated + 1 : 0;
    res.major_stress[static_cast<std::size_t>(t)] = run_major >= 3;
    res.elevated[static_cast<std::size_t>(t)] = run_elevated >= extended_days;
  }
  return res;
}

double var_nonparametric(std::vector<double> returns, double confidence,
                         std::vector<std::string>* warnings) {
  if (returns.empty())
    throw InsufficientDataError("var_nonparametric: empty sample");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw DomainError("var_nonparametric: confidence must lie in (0,1)");
  if (warnings && confidence >= 0.99 && returns.size() < 20) {
    warnings->push_back("VaR at " + std::to_string(confidence) +
                        " from only " + std::to_string(returns.size()) +
                        " observations; the tail estimate is unreliable");
  }
  return -quantile(std::move(returns), 1.0 - confidence);
}

double catfin_combine(double v_gpd, double v_sged, double v_np) {
  return 0.570 * v_gpd + 0.5719 * v_sged + 0.5889 * v_np;
}

}  // namespace sri
