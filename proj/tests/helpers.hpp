#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "sri/time_series.hpp"

namespace sri::test {

// Consecutive weekday-agnostic synthetic calendar starting 2020-01-01,
// long enough for any test here.
inline std::vector<Date> calendar(Eigen::Index n) {
  std::vector<Date> out;
  Date d = Date::from_parts(2020, 1, 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.push_back(d);
    d = next_day(d);
  }
  return out;
}

inline TimeSeries series(std::initializer_list<double> values,
                         std::string name = "x") {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  std::vector<Date> dates = calendar(v.size());
  return TimeSeries(std::move(name), std::move(dates), std::move(v));
}

inline TimeSeries series(const Eigen::VectorXd& values,
                         std::string name = "x") {
  return TimeSeries(std::move(name), calendar(values.size()), values);
}

// Uniform(a,b) draw built from the raw mt19937 stream so sequences are
// identical across standard libraries.
inline double uniform(std::mt19937& g, double a, double b) {
  return a + (b - a) * ((g() + 0.5) * (1.0 / 4294967296.0));
}

inline double gauss(std::mt19937& g) {
  const double u1 = uniform(g, 0.0, 1.0);
  const double u2 = uniform(g, 0.0, 1.0);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(6.283185307179586 * u2);
}

}  // namespace sri::test
