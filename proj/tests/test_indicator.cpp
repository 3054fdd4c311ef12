#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "sri/errors.hpp"
#include "sri/indicator.hpp"

using namespace sri;
using test::calendar;
using test::series;

TEST_CASE("cap weights") {
  const auto w = cap_weights({35.6, 3.7, 5.5, 1.0}, {"a", "b", "c", "d"});
  CHECK(w.weights.sum() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(w.weights[0] == doctest::Approx(0.777).epsilon(5e-4));
  CHECK(w.weights[1] == doctest::Approx(0.081).epsilon(5e-3));
  CHECK(w.weights[2] == doctest::Approx(0.120).epsilon(5e-3));
  CHECK(w.weights[3] == doctest::Approx(0.022).epsilon(5e-2));

  const auto equal = cap_weights({1, 1, 1, 1});
  for (int i = 0; i < 4; ++i)
    CHECK(equal.weights[i] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(equal.labels[2] == "market_3");

  CHECK(cap_weights({7.5}).weights[0] == 1.0);
  CHECK_THROWS_WITH_AS(cap_weights({1.0, 0.0}, {"ok", "empty"}),
                       doctest::Contains("empty"), DomainError);

  // scale invariance
  const auto scaled = cap_weights({356, 37, 55, 10});
  for (int i = 0; i < 4; ++i)
    CHECK(scaled.weights[i] == doctest::Approx(w.weights[i]).epsilon(1e-12));
}

TEST_CASE("mix weights validate") {
  CHECK(MixWeights::make(0.3, 0.7).w_rv == doctest::Approx(0.7));
  CHECK(MixWeights::iv_share(1.0).w_rv == 0.0);
  CHECK_THROWS_AS(MixWeights::make(0.6, 0.6), ConfigError);
  CHECK_THROWS_AS(MixWeights::make(-0.1, 1.1), ConfigError);
}

TEST_CASE("weighted composite") {
  const auto w = cap_weights({35.6, 3.7, 5.5, 1.0});
  const std::vector<TimeSeries> panel{series({20.0}), series({25.0}),
                                      series({22.0}), series({30.0})};
  const auto mix = weighted_composite(panel, w, "c");
  // hand evaluation with the published weights
  CHECK(mix.value(0) == doctest::Approx(20.865).epsilon(1e-3));
  const double exact = (35.6 * 20 + 3.7 * 25 + 5.5 * 22 + 1.0 * 30) / 45.8;
  CHECK(mix.value(0) == doctest::Approx(exact).epsilon(1e-12));
  CHECK(mix.name() == "c");

  // identical series in, same series out for any weights
  const auto same = weighted_composite(
      {series({3, 4}), series({3, 4}), series({3, 4}), series({3, 4})}, w,
      "s");
  CHECK(same.value(0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(same.value(1) == doctest::Approx(4.0).epsilon(1e-14));

  // single market identity
  const auto single =
      weighted_composite({series({5, 7})}, cap_weights({2.5}), "one");
  CHECK(single.value(1) == 7.0);

  CHECK_THROWS_AS(
      weighted_composite({series({1.0})}, w, "bad"), ConfigError);
}

TEST_CASE("composite missing propagation without renormalization") {
  const auto w = cap_weights({1, 1});
  const auto mix = weighted_composite(
      {series({10.0, kMissing}), series({20.0, 20.0})}, w, "m");
  CHECK(mix.value(0) == doctest::Approx(15.0));
  CHECK(mix.missing_at(1));
}

TEST_CASE("composite stays within input envelope") {
  std::mt19937 g(41);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::VectorXd a(30), b(30), c(30);
    for (int i = 0; i < 30; ++i) {
      a[i] = test::uniform(g, 10, 40);
      b[i] = test::uniform(g, 10, 40);
      c[i] = test::uniform(g, 10, 40);
    }
    const auto w = cap_weights({test::uniform(g, 0.1, 5),
                                test::uniform(g, 0.1, 5),
                                test::uniform(g, 0.1, 5)});
    const auto m =
        weighted_composite({series(a), series(b), series(c)}, w, "m");
    for (Eigen::Index t = 0; t < 30; ++t) {
      const double lo = std::min({a[t], b[t], c[t]});
      const double hi = std::max({a[t], b[t], c[t]});
      CHECK(m.value(t) >= lo - 1e-12);
      CHECK(m.value(t) <= hi + 1e-12);
    }
  }
}

TEST_CASE("country indicator mixes IV and RV") {
  const auto out = ivrvsri_country(series({20.0}), series({10.0}),
                                   MixWeights::make(0.5, 0.5), "c");
  CHECK(out.value(0) == doctest::Approx(15.0));

  const auto iv_only = ivrvsri_country(series({20.0, 22.0}), series({10.0, 9.0}),
                                       MixWeights::make(1.0, 0.0), "c");
  CHECK(iv_only.value(0) == 20.0);
  CHECK(iv_only.value(1) == 22.0);

  const auto same = ivrvsri_country(series({18.0}), series({18.0}),
                                    MixWeights::make(0.25, 0.75), "c");
  CHECK(same.value(0) == doctest::Approx(18.0));
}

TEST_CASE("country indicator unit-mismatch heuristic") {
  // IV in percent points against RV left in decimals: typical 100x gap.
  Eigen::VectorXd iv(40), rv(40);
  for (int i = 0; i < 40; ++i) {
    iv[i] = 20.0 + 0.1 * i;
    rv[i] = 0.2 + 0.001 * i;
  }
  CHECK_THROWS_WITH_AS(
      ivrvsri_country(series(iv), series(rv), MixWeights::make(0.5, 0.5), "c"),
      doctest::Contains("rv_scale"), ConfigError);
  CHECK_NOTHROW(ivrvsri_country(series(iv), series(rv),
                                MixWeights::make(0.5, 0.5), "c",
                                /*check_units=*/false));
  CHECK_NOTHROW(ivrvsri_country(series(iv), series((rv * 100).eval()),
                                MixWeights::make(0.5, 0.5), "c"));
}

TEST_CASE("global composition identity, two-market hand example") {
  const auto w = cap_weights({1, 1}, {"m1", "m2"});
  const auto mix = MixWeights::make(0.5, 0.5);
  auto set = build_indicator_set(
      {series({10.0}, "m1"), series({30.0}, "m2")},
      {series({20.0}, "m1"), series({40.0}, "m2")}, w, mix);
  CHECK(set.ivsri.value(0) == doctest::Approx(20.0));
  CHECK(set.rvsri.value(0) == doctest::Approx(30.0));
  CHECK(set.global.value(0) == doctest::Approx(25.0).epsilon(1e-14));
  CHECK(set.country[0].value(0) == doctest::Approx(15.0));
  CHECK(set.country[1].value(0) == doctest::Approx(35.0));
  // Eq-8 style cross-composition agrees
  CHECK(ivrvsri_global(set).value(0) == doctest::Approx(25.0).epsilon(1e-14));
}

TEST_CASE("global equals IVSRI at boundary mix and constant inputs") {
  const auto w = cap_weights({2, 3});
  auto set = build_indicator_set(
      {series({11.0, 12.0}), series({13.0, 9.0})},
      {series({7.0, 7.5}), series({6.0, 6.5})}, w, MixWeights::make(1.0, 0.0));
  CHECK(set.global.value(0) == doctest::Approx(set.ivsri.value(0)));
  CHECK(set.global.value(1) == doctest::Approx(set.ivsri.value(1)));

  auto constant = build_indicator_set(
      {series({9.0, 9.0}), series({9.0, 9.0})},
      {series({9.0, 9.0}), series({9.0, 9.0})}, w, MixWeights::make(0.4, 0.6));
  CHECK(constant.global.value(0) == doctest::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("indicator set aligns calendars by union") {
  const auto cal = calendar(3);
  Eigen::VectorXd v2(2);
  v2 << 20, 21;
  const TimeSeries iv_a("a", {cal[0], cal[1]}, v2);
  const TimeSeries iv_b("b", {cal[1], cal[2]}, v2);
  Eigen::VectorXd r2(2);
  r2 << 15, 16;
  const TimeSeries rv_a("a", {cal[0], cal[1]}, r2);
  const TimeSeries rv_b("b", {cal[1], cal[2]}, r2);
  auto set = build_indicator_set({iv_a, iv_b}, {rv_a, rv_b},
                                 cap_weights({1, 1}, {"a", "b"}),
                                 MixWeights::make(0.5, 0.5));
  REQUIRE(set.global.size() == 3);
  CHECK(set.iv[0].name() == "IV_a");
  CHECK(set.rv[1].name() == "RV_b");
  CHECK(set.country[0].name() == "IVRVSRI_a");
  CHECK(set.ivsri.name() == "IVSRI");
  CHECK(set.global.name() == "IVRVSRI");
  // b has no data on the first date: composite undefined there
  CHECK(set.global.missing_at(0));
  CHECK(!set.global.missing_at(1));
  CHECK(set.global.missing_at(2));
}
