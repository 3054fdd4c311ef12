#include "sri/indicator.hpp"

#include <algorithm>
#include <cmath>

#include "sri/errors.hpp"
#include "sri/stats.hpp"

namespace sri {

MarketWeights cap_weights(std::vector<double> caps,
                          std::vector<std::string> labels) {
  if (caps.empty()) throw DomainError("cap_weights: no markets");
  if (labels.empty()) {
    for (std::size_t i = 0; i < caps.size(); ++i)
      labels.push_back("market_" + std::to_string(i + 1));
  }
  if (labels.size() != caps.size())
    throw ConfigError("cap_weights: label/cap length mismatch");

  double total = 0.0;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    if (!(caps[i] > 0.0)) {
      throw DomainError("cap_weights: non-positive capitalization for " +
                        labels[i]);
    }
    total += caps[i];
  }
  MarketWeights w;
  w.weights.resize(static_cast<Eigen::Index>(caps.size()));
  for (std::size_t i = 0; i < caps.size(); ++i)
    w.weights[static_cast<Eigen::Index>(i)] = caps[i] / total;
  w.labels = std::move(labels);
  w.caps = std::move(caps);
  return w;
}

MixWeights MixWeights::make(double w_iv, double w_rv) {
  if (!(w_iv >= 0.0 && w_iv <= 1.0 && w_rv >= 0.0 && w_rv <= 1.0))
    throw ConfigError("mix weights must lie in [0,1]");
  if (std::abs(w_iv + w_rv - 1.0) > 1e-12)
    throw ConfigError("mix weights must sum to 1");
  return MixWeights{w_iv, w_rv};
}

TimeSeries weighted_composite(const std::vector<TimeSeries>& series,
                              const MarketWeights& weights, std::string name) {
  if (series.empty()) throw ConfigError("weighted_composite: no series");
  if (static_cast<Eigen::Index>(series.size()) != weights.weights.size())
    throw ConfigError("weighted_composite: " + std::to_string(series.size()) +
                      " series vs " + std::to_string(weights.weights.size()) +
                      " weights");
  for (const auto& s : series) {
    if (!s.same_dates(series.front()))
      throw AlignmentError("weighted_composite: '" + s.name() +
                           "' is not on the shared date index");
  }
  const Eigen::Index n = series.front().size();
  Eigen::VectorXd out(n);
  for (Eigen::Index t = 0; t < n; ++t) {
    double acc = 0.0;
    for (std::size_t k = 0; k < series.size(); ++k) {
      const double v = series[k].value(t);
      if (is_missing(v)) {
        acc = kMissing;
        break;
      }
      acc += weights.weights[static_cast<Eigen::Index>(k)] * v;
    }
    out[t] = acc;
  }
  return series.front().with_values(std::move(out), std::move(name));
}

namespace {

double median_magnitude(const TimeSeries& s) {
  std::vector<double> v = s.present_values();
  for (double& x : v) x = std::abs(x);
  if (v.empty()) return kMissing;
  return quantile(std::move(v), 0.5);
}

}  // namespace

TimeSeries ivrvsri_country(const TimeSeries& iv, const TimeSeries& rv,
                           const MixWeights& mix, std::string name,
                           bool check_units) {
  if (!iv.same_dates(rv))
    throw AlignmentError("ivrvsri_country: '" + iv.name() + "' and '" +
                         rv.name() + "' are not on the shared date index");
  if (check_units) {
    const double miv = median_magnitude(iv);
    const double mrv = median_magnitude(rv);
    if (!is_missing(miv) && !is_missing(mrv) && miv > 0.0 && mrv > 0.0) {
      const double ratio = std::max(miv, mrv) / std::min(miv, mrv);
      if (ratio > 25.0) {
        throw ConfigError(
            "ivrvsri_country: '" + iv.name() + "' and '" + rv.name() +
            "' differ by " + std::to_string(ratio) +
            "x in typical magnitude; scale both legs to the same units "
            "(see rv_scale) or disable the unit check");
      }
    }
  }
  const Eigen::Index n = iv.size();
  Eigen::VectorXd out(n);
  for (Eigen::Index t = 0; t < n; ++t) {
    const double a = iv.value(t);
    const double b = rv.value(t);
    out[t] = (is_missing(a) || is_missing(b))
                 ? kMissing
                 : mix.w_iv * a + mix.w_rv * b;
  }
  return iv.with_values(std::move(out), std::move(name));
}

namespace {

// Cap-weighted sum of country indicators: the country-first composition of
// the global indicator.
TimeSeries global_from_countries(const IndicatorSet& set) {
  return weighted_composite(set.country, set.weights, "IVRVSRI_countries");
}

TimeSeries global_from_composites(const IndicatorSet& set) {
  return ivrvsri_country(set.ivsri, set.rvsri, set.mix, "IVRVSRI",
                         /*check_units=*/false);
}

void check_global_consistency(const TimeSeries& a, const TimeSeries& b) {
  double max_abs = 0.0;
  for (Eigen::Index t = 0; t < a.size(); ++t) {
    const double x = a.value(t);
    const double y = b.value(t);
    if (is_missing(x) != is_missing(y)) {
      throw InternalConsistencyError(
          "global indicator: compositions disagree on missingness at " +
          a.date(t).to_string());
    }
    if (!is_missing(x)) max_abs = std::max(max_abs, std::abs(x - y));
  }
  if (max_abs >= 1e-10) {
    throw InternalConsistencyError(
        "global indicator: the two compositions differ by " +
        std::to_string(max_abs) +
        "; check series alignment and leg units");
  }
}

}  // namespace

TimeSeries ivrvsri_global(const IndicatorSet& indicators) {
  TimeSeries from_composites = global_from_composites(indicators);
  TimeSeries from_countries = global_from_countries(indicators);
  check_global_consistency(from_composites, from_countries);
  return from_composites;
}

IndicatorSet build_indicator_set(std::vector<TimeSeries> iv,
                                 std::vector<TimeSeries> rv,
                                 const MarketWeights& weights,
                                 const MixWeights& mix, bool check_units) {
  if (iv.size() != rv.size())
    throw ConfigError("build_indicator_set: IV/RV market count mismatch");
  if (static_cast<Eigen::Index>(iv.size()) != weights.weights.size())
    throw ConfigError("build_indicator_set: market count vs weight mismatch");
  if (iv.empty()) throw ConfigError("build_indicator_set: no markets");

  // One shared index across every leg of every market.
  std::vector<TimeSeries> all;
  all.reserve(iv.size() * 2);
  for (const auto& s : iv) all.push_back(s);
  for (const auto& s : rv) all.push_back(s);
  all = align(all, AlignPolicy::Union);

  IndicatorSet set;
  set.weights = weights;
  set.mix = mix;
  set.markets = weights.labels;
  const std::size_t m = iv.size();
  for (std::size_t k = 0; k < m; ++k) {
    set.iv.push_back(all[k].renamed("IV_" + weights.labels[k]));
    set.rv.push_back(all[m + k].renamed("RV_" + weights.labels[k]));
    set.country.push_back(ivrvsri_country(set.iv[k], set.rv[k], mix,
                                          "IVRVSRI_" + weights.labels[k],
                                          check_units));
  }
  set.ivsri = weighted_composite(set.iv, weights, "IVSRI");
  set.rvsri = weighted_composite(set.rv, weights, "RVSRI");
  set.global = ivrvsri_global(set);
  return set;
}

}  // namespace sri
