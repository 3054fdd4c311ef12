#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "sri/errors.hpp"
#include "sri/riskmap.hpp"
#include "sri/stats.hpp"

using namespace sri;
using test::series;

namespace {

MapPolicy quartiles(int warmup, bool exclude_current = false) {
  MapPolicy p;
  p.warmup = warmup;
  p.exclude_current = exclude_current;
  return p;
}

// Brute-force reference: recompute the window and count breakpoint
// quantiles strictly below the value.
int oracle_bucket(const std::vector<double>& window, double v,
                  const std::vector<double>& breakpoints) {
  std::vector<double> sorted = window;
  std::sort(sorted.begin(), sorted.end());
  int bucket = 1;
  for (double q : breakpoints) {
    if (sorted_quantile(sorted, q) < v) ++bucket;
  }
  return bucket;
}

}  // namespace

TEST_CASE("documented 101-point window example") {
  Eigen::VectorXd v(101);
  for (int i = 0; i < 100; ++i) v[i] = i + 1;
  v[100] = 50.0;
  const auto map = classify(series(v), quartiles(2));
  // window of 101 values (1..100, 50): Q1 = 25.75, median 50.5 -> bucket 2
  CHECK(map.bucket[100] == 2);
  std::vector<double> window(v.data(), v.data() + 101);
  CHECK(oracle_bucket(window, 50.0, {0.25, 0.5, 0.75}) == 2);
}

TEST_CASE("extremes and warmup") {
  Eigen::VectorXd v(40);
  for (int i = 0; i < 40; ++i) v[i] = 10.0 + i % 7;
  v[38] = 100.0;  // above all history
  v[39] = -5.0;   // below all history
  const auto map = classify(series(v), quartiles(10));
  CHECK(map.bucket[38] == 4);
  CHECK(map.bucket[39] == 1);
  for (int t = 0; t < 9; ++t) CHECK(map.bucket[t] == 0);  // warming up
  CHECK(map.bucket[9] != 0);
  CHECK(map.n_classified == 31);
}

TEST_CASE("classification matches brute-force oracle, expanding") {
  std::mt19937 g(101);
  Eigen::VectorXd v(200);
  for (int i = 0; i < 200; ++i) v[i] = test::gauss(g);
  v[50] = kMissing;
  const auto map = classify(series(v), quartiles(20));
  std::vector<double> window;
  for (int t = 0; t < 200; ++t) {
    if (!is_missing(v[t])) window.push_back(v[t]);
    if (is_missing(v[t])) {
      CHECK(map.bucket[t] == 0);
      continue;
    }
    if (static_cast<int>(window.size()) < 20) {
      CHECK(map.bucket[t] == 0);
      continue;
    }
    CHECK(map.bucket[t] == oracle_bucket(window, v[t], {0.25, 0.5, 0.75}));
  }
}

TEST_CASE("rolling window drops old history") {
  std::mt19937 g(57);
  Eigen::VectorXd v(300);
  for (int i = 0; i < 300; ++i) v[i] = test::gauss(g);
  MapPolicy p = quartiles(30);
  p.window = MapPolicy::Window::Rolling;
  p.rolling_length = 60;
  const auto map = classify(series(v), p);
  for (int t = 100; t < 300; t += 37) {
    std::vector<double> window(v.data() + (t - 59), v.data() + t + 1);
    CHECK(map.bucket[t] == oracle_bucket(window, v[t], p.breakpoints));
  }
}

TEST_CASE("exclude_current leaves the value out of its own window") {
  Eigen::VectorXd v(6);
  v << 1, 2, 3, 4, 5, 100;
  MapPolicy p = quartiles(5, /*exclude_current=*/true);
  const auto map = classify(series(v), p);
  // window for t=5 is {1..5}: 100 above every quantile
  CHECK(map.bucket[5] == 4);
  std::vector<double> w(v.data(), v.data() + 5);
  CHECK(oracle_bucket(w, 100.0, p.breakpoints) == 4);
}

TEST_CASE("ties fall to the lowest bucket and constants are degenerate") {
  Eigen::VectorXd v = Eigen::VectorXd::Constant(30, 3.25);
  const auto map = classify(series(v), quartiles(5));
  for (int t = 4; t < 30; ++t) CHECK(map.bucket[t] == 1);
  CHECK(map.degenerate_windows == 26);
}

TEST_CASE("bucket is monotone in the value") {
  std::mt19937 g(73);
  Eigen::VectorXd v(80);
  for (int i = 0; i < 80; ++i) v[i] = test::gauss(g);
  auto bumped = v;
  bumped[79] = v[79] + 0.8;
  const int b0 = classify(series(v), quartiles(20)).bucket[79];
  const int b1 = classify(series(bumped), quartiles(20)).bucket[79];
  CHECK(b1 >= b0);
}

TEST_CASE("rank invariance under exp") {
  std::mt19937 g(211);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::VectorXd v(150);
    for (int i = 0; i < 150; ++i) v[i] = test::uniform(g, 0.0, 5.0);
    const auto a = classify(series(v), quartiles(25));
    const auto b = classify(series(v.array().exp().matrix().eval()),
                            quartiles(25));
    CHECK(a.bucket == b.bucket);
  }
}

TEST_CASE("no look-ahead: truncation preserves earlier buckets") {
  std::mt19937 g(307);
  Eigen::VectorXd v(120);
  for (int i = 0; i < 120; ++i) v[i] = test::gauss(g);
  const auto full = classify(series(v), quartiles(15));
  for (int cut : {40, 77, 119}) {
    const auto trunc =
        classify(series(v.head(cut + 1).eval()), quartiles(15));
    for (int t = 0; t <= cut; ++t) CHECK(trunc.bucket[t] == full.bucket[t]);
  }
}

TEST_CASE("classify requires warmup-many present values") {
  Eigen::VectorXd v(10);
  v.setLinSpaced(10, 1.0, 10.0);
  CHECK_THROWS_AS(classify(series(v), quartiles(11)),
                  InsufficientHistoryError);
}

TEST_CASE("policy validation") {
  MapPolicy p;
  p.breakpoints = {0.5, 0.25};
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = MapPolicy{};
  p.warmup = 1;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = MapPolicy{};
  p.window = MapPolicy::Window::Rolling;
  p.rolling_length = 100;
  p.warmup = 252;  // rolling length below warmup is inconsistent
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.rolling_length = 300;
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("occupancy splits a full-sample map near evenly") {
  // Distinct values, include-current expanding window from a tiny warmup:
  // each quartile gathers about a quarter of the classified dates.
  std::mt19937 g(499);
  Eigen::VectorXd v(400);
  for (int i = 0; i < 400; ++i) v[i] = test::gauss(g);
  const auto occ = occupancy(classify(series(v), quartiles(2)));
  REQUIRE(occ.size() == 4);
  double total = 0.0;
  for (double f : occ) {
    CHECK(f > 0.25 - 0.08);
    CHECK(f < 0.25 + 0.08);
    total += f;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("all-red map occupancy") {
  // Strictly increasing series: every classified value is a running maximum.
  Eigen::VectorXd v(50);
  v.setLinSpaced(50, 1.0, 50.0);
  MapPolicy p = quartiles(5, /*exclude_current=*/true);
  const auto occ = occupancy(classify(series(v), p));
  CHECK(occ[0] == 0.0);
  CHECK(occ[1] == 0.0);
  CHECK(occ[2] == 0.0);
  CHECK(occ[3] == 1.0);
}

TEST_CASE("bucket labels and colors") {
  CHECK(bucket_label(1, 4) == "GREEN");
  CHECK(bucket_label(2, 4) == "LIGHT GREEN");
  CHECK(bucket_label(3, 4) == "ORANGE");
  CHECK(bucket_label(4, 4) == "RED");
  CHECK(bucket_label(0, 4) == "");
  CHECK(bucket_hex(4, 4) == "#d23b2e");
  CHECK(bucket_hex(1, 4) == "#2e9e4f");
  CHECK(bucket_label(2, 2) != "");
  CHECK(bucket_hex(0, 4) == "#d9d9d9");
}
