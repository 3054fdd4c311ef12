#include "sri/stats.hpp"

#include <algorithm>
#include <cmath>

#include "sri/errors.hpp"

namespace sri {

double sorted_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw InsufficientDataError("quantile of empty sample");
  if (q < 0.0 || q > 1.0) throw DomainError("quantile level outside [0,1]");
  const std::size_t n = sorted.size();
  const double h = static_cast<double>(n - 1) * q;
  const auto lo = static_cast<std::size_t>(h);
  const double frac = h - static_cast<double>(lo);
  if (lo + 1 >= n || frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double quantile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  return sorted_quantile(values, q);
}

double chi2_survival_2df(double x) {
  if (x <= 0.0) return 1.0;
  return std::exp(-0.5 * x);
}

StatsSummary describe(const TimeSeries& series) {
  StatsSummary s;
  std::vector<double> v = series.present_values();
  s.n_missing = series.n_missing();
  s.nobs = static_cast<Eigen::Index>(v.size());
  if (v.empty()) return s;

  const double n = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / n;

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : v) {
    const double d = x - s.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;

  std::sort(v.begin(), v.end());
  s.min = v.front();
  s.max = v.back();
  s.q1 = sorted_quantile(v, 0.25);
  s.median = sorted_quantile(v, 0.5);
  s.q3 = sorted_quantile(v, 0.75);

  if (v.size() >= 2) s.stdev = std::sqrt(m2 * n / (n - 1.0));
  if (m2 > 0.0) {
    if (v.size() >= 3) s.skewness = m3 / std::pow(m2, 1.5);
    if (v.size() >= 4) s.kurtosis = m4 / (m2 * m2) - 3.0;
  }
  if (!is_missing(s.skewness) && !is_missing(s.kurtosis)) {
    s.jb_stat = n / 6.0 *
                (s.skewness * s.skewness + 0.25 * s.kurtosis * s.kurtosis);
    s.jb_pvalue = chi2_survival_2df(s.jb_stat);
  }
  return s;
}

namespace {

double pairwise_pearson(const TimeSeries& a, const TimeSeries& b, int lag,
                        Eigen::Index& pairs_out) {
  // Both series live on the same index; pair a[t] with b[t-lag].
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  Eigen::Index m = 0;
  for (Eigen::Index t = lag; t < a.size(); ++t) {
    const double x = a.value(t);
    const double y = b.value(t - lag);
    if (is_missing(x) || is_missing(y)) continue;
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
    ++m;
  }
  pairs_out = m;
  if (m < 3) return kMissing;
  const double dn = static_cast<double>(m);
  const double cov = sxy - sx * sy / dn;
  const double vx = sxx - sx * sx / dn;
  const double vy = syy - sy * sy / dn;
  if (vx <= 0.0 || vy <= 0.0) return kMissing;
  return cov / std::sqrt(vx * vy);
}

}  // namespace

TimeSeries standardize(const TimeSeries& series) {
  const StatsSummary s = describe(series);
  if (s.nobs < 2) {
    throw InsufficientDataError("standardize: '" + series.name() +
                                "' has fewer than 2 observations");
  }
  if (!(s.stdev > 0.0)) {
    throw DomainError("standardize: '" + series.name() + "' is constant");
  }
  Eigen::VectorXd v(series.size());
  for (Eigen::Index t = 0; t < series.size(); ++t) {
    const double x = series.value(t);
    v[t] = is_missing(x) ? kMissing : (x - s.mean) / s.stdev;
  }
  return series.with_values(std::move(v), series.name() + "_std");
}

CorrelationMatrix correlation_matrix(const std::vector<TimeSeries>& panel,
                                     int lag) {
  if (panel.empty()) throw ConfigError("correlation_matrix: empty panel");
  if (lag < 0) throw ConfigError("correlation_matrix: negative lag");

  std::vector<TimeSeries> aligned = align(panel, AlignPolicy::Union);
  const auto n = static_cast<Eigen::Index>(aligned.size());

  CorrelationMatrix cm;
  cm.lag = lag;
  cm.entries.resize(n, n);
  for (const auto& s : aligned) cm.labels.push_back(s.name());

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Eigen::Index pairs = 0;
      const double r =
          pairwise_pearson(aligned[static_cast<std::size_t>(i)],
                           aligned[static_cast<std::size_t>(j)], lag, pairs);
      cm.entries(i, j) = r;
      if (is_missing(r)) {
        cm.diagnostics.push_back("(" + cm.labels[static_cast<std::size_t>(i)] +
                                 ", " + cm.labels[static_cast<std::size_t>(j)] +
                                 "): only " + std::to_string(pairs) +
                                 " complete pairs");
      }
    }
  }
  return cm;
}

}  // namespace sri
