// Acceptance gate: eleven self-contained checks covering the engine's
// numeric contracts, property suites, and end-to-end determinism. Each
// criterion prints one [PASS]/[FAIL] line; the exit status is the number of
// failed criteria.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <helpers.hpp>

#include "sri/benchmarks.hpp"
#include "sri/csv.hpp"
#include "sri/errors.hpp"
#include "sri/indicator.hpp"
#include "sri/quantile_solver.hpp"
#include "sri/regression.hpp"
#include "sri/riskmap.hpp"
#include "sri/time_series.hpp"
#include "sri/volatility.hpp"

namespace fs = std::filesystem;
using namespace sri;
using test::gauss;
using test::uniform;

namespace {

std::string g_detail;  // failure note for the current criterion

bool expect(bool ok, const std::string& note) {
  if (!ok && g_detail.empty()) g_detail = note;
  return ok;
}

std::string num(double v) {
  std::ostringstream ss;
  ss.precision(12);
  ss << v;
  return ss.str();
}

// ---- 1: capitalization weights -------------------------------------------

bool cap_weight_reproduction() {
  const auto w = cap_weights({35.6, 3.7, 5.5, 1.0});
  const double want[4] = {0.777, 0.081, 0.120, 0.022};
  bool ok = true;
  for (int i = 0; i < 4; ++i) {
    ok &= expect(std::fabs(w.weights[i] - want[i]) <= 5e-4,
                 "weight " + std::to_string(i) + " = " + num(w.weights[i]) +
                     ", reference " + num(want[i]));
  }
  return ok;
}

// ---- 2: global composition identity --------------------------------------

bool composition_identity() {
  std::mt19937 g(2024);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> caps;
    for (int m = 0; m < 4; ++m) caps.push_back(uniform(g, 0.1, 50.0));
    const auto weights = cap_weights(caps);
    const auto mix = MixWeights::iv_share(uniform(g, 0.05, 0.95));

    const auto cal = test::calendar(500);
    std::vector<TimeSeries> iv, rv, country;
    for (int m = 0; m < 4; ++m) {
      Eigen::VectorXd a(500), b(500);
      for (int t = 0; t < 500; ++t) {
        a[t] = uniform(g, 5.0, 60.0);
        b[t] = uniform(g, 5.0, 60.0);
      }
      iv.emplace_back("iv" + std::to_string(m), cal, a);
      rv.emplace_back("rv" + std::to_string(m), cal, b);
      country.push_back(ivrvsri_country(iv.back(), rv.back(), mix,
                                        "c" + std::to_string(m), false));
    }
    // mix of cap-weighted composites...
    const TimeSeries ivsri = weighted_composite(iv, weights, "ivsri");
    const TimeSeries rvsri = weighted_composite(rv, weights, "rvsri");
    const TimeSeries via_composites =
        ivrvsri_country(ivsri, rvsri, mix, "g1", false);
    // ...versus the cap-weighted mix of per-market indicators
    const TimeSeries via_countries =
        weighted_composite(country, weights, "g2");
    for (Eigen::Index t = 0; t < 500; ++t) {
      worst = std::max(worst, std::fabs(via_composites.value(t) -
                                        via_countries.value(t)));
    }
  }
  return expect(worst <= 1e-10,
                "max-abs composition gap " + num(worst) + " > 1e-10");
}

// ---- 3: realized-volatility closed form -----------------------------------

bool rv_closed_form() {
  const int n = 22;
  const auto cal = test::calendar(n);
  Eigen::VectorXd p(n), flat(n), scaled(n);
  for (int t = 0; t < n; ++t) {
    p[t] = 100.0 * std::exp(0.01 * t);
    flat[t] = 50.0;
    scaled[t] = p[t] * 12345.678;
  }
  const TimeSeries rv = realized_vol(TimeSeries("p", cal, p), {21, 252.0});
  bool ok = expect(std::fabs(rv.value(n - 1) - 0.158745) <= 1e-6,
                   "RV of 21 x 0.01 log returns = " + num(rv.value(n - 1)));

  const TimeSeries rv_flat =
      realized_vol(TimeSeries("f", cal, flat), {21, 252.0});
  ok &= expect(rv_flat.value(n - 1) == 0.0,
               "constant prices gave RV " + num(rv_flat.value(n - 1)));

  const TimeSeries rv_scaled =
      realized_vol(TimeSeries("s", cal, scaled), {21, 252.0});
  double gap = 0.0;
  for (Eigen::Index t = 0; t < n; ++t) {
    if (rv.missing_at(t)) continue;
    gap = std::max(gap, std::fabs(rv.value(t) - rv_scaled.value(t)));
  }
  ok &= expect(gap <= 1e-12, "price-scale invariance gap " + num(gap));
  return ok;
}

// ---- 4: implied-variance strip --------------------------------------------

bool implied_variance_strip() {
  const auto slice =
      OptionChainSlice::make(0.25, 0.0, 100.0, {100.0, 105.0}, {2.0, 1.0});
  const double index = implied_variance_index(slice);
  // one-sided boundary spacings (both 5), no discounting, F = K0
  const double hand =
      100.0 * std::sqrt(8.0 * (5.0 * 2.0 / (100.0 * 100.0) +
                               5.0 * 1.0 / (105.0 * 105.0)));
  bool ok = expect(std::fabs(index - 10.783) <= 1e-3,
                   "two-strike fixture index = " + num(index));
  ok &= expect(std::fabs(index - hand) <= 1e-9,
               "index " + num(index) + " vs hand strip " + num(hand));

  bool threw = false;
  try {
    implied_variance_index(
        OptionChainSlice::make(0.25, 0.0, 100.0, {95.0, 105.0}, {0.0, 0.0}));
  } catch (const DegenerateChainError&) {
    threw = true;
  }
  ok &= expect(threw, "zero-quote negative strip did not raise "
                      "DegenerateChainError");
  return ok;
}

// ---- 5: capital-shortfall fixtures and monotonicity ------------------------

bool capital_shortfall() {
  FirmSnapshot f{"alpha", 100.0, 900.0, 0.6, 0.08};
  const double v = srisk_firm(f);
  bool ok = expect(std::fabs(v - 35.2) <= 1e-9,
                   "fixture shortfall = " + num(v));
  const double lvg = (f.debt + f.equity) / f.equity;
  const double alt = f.equity * (f.k * lvg + (1.0 - f.k) * f.lrmes - 1.0);
  ok &= expect(std::fabs(v - alt) <= 1e-9,
               "direct form " + num(v) + " vs leverage form " + num(alt));

  const double agg = srisk_aggregate({35.2, -10.0, 5.0});
  ok &= expect(std::fabs(agg - 40.2) <= 1e-12,
               "aggregate of (35.2, -10, 5) = " + num(agg));

  std::mt19937 g(55);
  for (int rep = 0; rep < 1000 && ok; ++rep) {
    FirmSnapshot s{"m", uniform(g, 1.0, 200.0), uniform(g, 0.0, 2000.0),
                   uniform(g, 0.0, 0.99), uniform(g, 0.01, 0.2)};
    const double base = srisk_firm(s);
    FirmSnapshot s2 = s;
    s2.debt += 10.0;
    ok &= expect(srisk_firm(s2) >= base, "shortfall fell as debt rose");
    s2 = s;
    s2.lrmes = s.lrmes + 0.005;  // stays within [0,1)
    ok &= expect(srisk_firm(s2) >= base - 1e-12,
                 "shortfall fell as expected equity loss rose");
    s2 = s;
    s2.k = s.k + 0.005;  // stays within [0,1)
    ok &= expect(srisk_firm(s2) >= base - 1e-12,
                 "shortfall fell as the capital requirement rose");
    s2 = s;
    s2.equity += 10.0;
    ok &= expect(srisk_firm(s2) <= base + 1e-12,
                 "shortfall rose as equity rose");
  }
  return ok;
}

// ---- 6: tail-VaR combine constants ----------------------------------------

bool catfin_constants() {
  bool ok = expect(std::fabs(catfin_combine(1.0, 1.0, 1.0) - 1.7308) <= 1e-10,
                   "combine(1,1,1) = " + num(catfin_combine(1, 1, 1)));
  ok &= expect(std::fabs(catfin_combine(1.0, 0.0, 0.0) - 0.570) <= 1e-12,
               "combine(1,0,0) = " + num(catfin_combine(1, 0, 0)));
  ok &= expect(std::fabs(catfin_combine(0.0, 1.0, 0.0) - 0.5719) <= 1e-12,
               "combine(0,1,0) = " + num(catfin_combine(0, 1, 0)));
  ok &= expect(std::fabs(catfin_combine(0.0, 0.0, 1.0) - 0.5889) <= 1e-12,
               "combine(0,0,1) = " + num(catfin_combine(0, 0, 1)));
  return ok;
}

// ---- 7: pinball solver vs enumeration oracles ------------------------------

double line_oracle(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                   double tau) {
  double best = std::numeric_limits<double>::infinity();
  auto eval = [&](double a, double b) {
    Eigen::VectorXd r = y - (a + b * x.array()).matrix();
    best = std::min(best, pinball_loss(r, tau));
  };
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    eval(y[i], 0.0);
    for (Eigen::Index j = i + 1; j < x.size(); ++j) {
      if (x[i] == x[j]) continue;
      const double b = (y[j] - y[i]) / (x[j] - x[i]);
      eval(y[i] - b * x[i], b);
    }
  }
  return best;
}

bool solver_oracle_equivalence() {
  std::mt19937 g(777);
  const double taus[5] = {0.1, 0.25, 0.5, 0.75, 0.9};
  bool ok = true;
  for (int rep = 0; rep < 200 && ok; ++rep) {
    const int n = 5 + int(uniform(g, 0.0, 25.0));
    Eigen::VectorXd x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = gauss(g);
      y[i] = 0.4 - 0.9 * x[i] + gauss(g);
    }
    Eigen::MatrixXd X(n, 2);
    X.col(0).setOnes();
    X.col(1) = x;
    const double tau = taus[rep % 5];
    const auto fit = minimize_pinball(X, y, tau);
    const double oracle = line_oracle(x, y, tau);
    ok &= expect(std::fabs(fit.objective - oracle) <= 1e-9 * (1.0 + oracle),
                 "rep " + std::to_string(rep) + ": solver " +
                     num(fit.objective) + " vs oracle " + num(oracle));

    // intercept-only: brute-force scan over the order statistics
    Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, 1);
    const auto f0 = minimize_pinball(ones, y, tau);
    double scan = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      scan = std::min(scan,
                      pinball_loss(Eigen::VectorXd(y.array() - y[i]), tau));
    }
    ok &= expect(std::fabs(f0.objective - scan) <= 1e-9 * (1.0 + scan),
                 "rep " + std::to_string(rep) + ": intercept-only " +
                     num(f0.objective) + " vs scan " + num(scan));
  }
  return ok;
}

// ---- 8: pseudo-R² nesting contract ----------------------------------------

bool pseudo_r2_contract() {
  bool ok = expect(pseudo_r2(2.0, 2.0) == 0.0, "equal objectives not 0");
  ok &= expect(pseudo_r2(0.0, 2.0) == 1.0, "zero full objective not 1");

  // an exactly linear response drives the full objective (hence pseudo-R²'s
  // complement) to zero
  Eigen::VectorXd x(20), y(20);
  for (int i = 0; i < 20; ++i) {
    x[i] = 0.3 * i - 2.0;
    y[i] = 1.0 + 2.0 * x[i];
  }
  Eigen::MatrixXd X(20, 2);
  X.col(0).setOnes();
  X.col(1) = x;
  const auto exact = minimize_pinball(X, y, 0.3);
  const auto only =
      minimize_pinball(Eigen::MatrixXd::Ones(20, 1), y, 0.3);
  ok &= expect(pseudo_r2(exact.objective, only.objective) == 1.0,
               "exact linear fit gave pseudo-R² " +
                   num(pseudo_r2(exact.objective, only.objective)));

  std::mt19937 g(4242);
  for (int rep = 0; rep < 100 && ok; ++rep) {
    const int n = 30 + int(uniform(g, 0.0, 40.0));
    Eigen::VectorXd x1(n), x2(n), y2(n);
    for (int i = 0; i < n; ++i) {
      x1[i] = gauss(g);
      x2[i] = gauss(g);
      y2[i] = x1[i] - 0.5 * x2[i] + gauss(g);
    }
    Eigen::MatrixXd small(n, 2), big(n, 3), ones = Eigen::MatrixXd::Ones(n, 1);
    small.col(0).setOnes();
    small.col(1) = x1;
    big.leftCols(2) = small;
    big.col(2) = x2;
    const double tau = uniform(g, 0.05, 0.95);
    const double v1 = minimize_pinball(small, y2, tau).objective;
    const double v2 = minimize_pinball(big, y2, tau).objective;
    const double v0 = minimize_pinball(ones, y2, tau).objective;
    ok &= expect(v2 <= v1 + 1e-9 * (1.0 + v1),
                 "nested objective rose: " + num(v1) + " -> " + num(v2));
    ok &= expect(v1 <= v0 * (1.0 + 1e-12) && v2 <= v0 * (1.0 + 1e-12),
                 "full objective exceeded the intercept-only objective");
  }
  return ok;
}

// ---- 9: risk-map rank invariance, no look-ahead, occupancy -----------------

bool riskmap_properties() {
  MapPolicy policy;
  policy.warmup = 30;  // include-current expanding window
  bool ok = true;

  std::mt19937 g(333);
  for (int rep = 0; rep < 50 && ok; ++rep) {
    const int n = 150 + int(uniform(g, 0.0, 100.0));
    Eigen::VectorXd v(n), ev(n);
    for (int i = 0; i < n; ++i) {
      v[i] = gauss(g);
      ev[i] = std::exp(v[i]);
    }
    const auto cal = test::calendar(n);
    const auto a = classify(TimeSeries("x", cal, v), policy);
    const auto b = classify(TimeSeries("ex", cal, ev), policy);
    ok &= expect(a.bucket == b.bucket,
                 "bucket sequence changed under exp at rep " +
                     std::to_string(rep));
  }

  // truncating the future must not change any already-classified bucket
  const int n = 400;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = gauss(g);
  const auto cal = test::calendar(n);
  const auto full = classify(TimeSeries("x", cal, v), policy);
  for (int rep = 0; rep < 20 && ok; ++rep) {
    const int cut = 50 + int(uniform(g, 0.0, 349.0));
    std::vector<Date> cd(cal.begin(), cal.begin() + cut);
    const auto part = classify(TimeSeries("x", cd, v.head(cut)), policy);
    for (int t = 0; t < cut; ++t) {
      ok &= expect(part.bucket[static_cast<std::size_t>(t)] ==
                       full.bucket[static_cast<std::size_t>(t)],
                   "bucket at t=" + std::to_string(t) +
                       " changed when history was cut at " +
                       std::to_string(cut));
      if (!ok) break;
    }
  }

  // i.i.d. draws spend a quarter of their time in each quartile bucket
  Eigen::VectorXd u(10000);
  for (int i = 0; i < 10000; ++i) u[i] = uniform(g, 0.0, 1.0);
  MapPolicy occ_policy;
  occ_policy.warmup = 100;
  const auto map = classify(TimeSeries("u", test::calendar(10000), u),
                            occ_policy);
  const auto shares = occupancy(map);
  for (std::size_t b = 0; b < shares.size(); ++b) {
    ok &= expect(std::fabs(shares[b] - 0.25) <= 0.03,
                 "bucket " + std::to_string(b + 1) + " occupancy " +
                     num(shares[b]));
  }
  return ok;
}

// ---- 10: tail-only dependence dominates low-tau fits -----------------------

bool tail_dominance() {
  int wins = 0;
  for (int run = 0; run < 100; ++run) {
    std::mt19937 g(9000 + run);
    const int n = 1500;
    Eigen::VectorXd s(n), y(n);
    for (int t = 0; t < n; ++t) s[t] = 0.05 * gauss(g);
    y[0] = 0.0;
    for (int t = 1; t < n; ++t) {
      const double crash =
          uniform(g, 0.0, 1.0) < 0.1 ? 1.5 * std::max(s[t - 1], 0.0) : 0.0;
      y[t] = 0.002 + 0.02 * gauss(g) - crash;
    }
    const auto cal = test::calendar(n);
    const ReturnSeries resp{TimeSeries("y", cal, y), ReturnKind::Simple, 1,
                            true};
    const ReturnSeries pred{TimeSeries("s", cal, s), ReturnKind::Simple, 1,
                            true};
    const auto d = build_design(resp, {pred}, 1);
    const double tail = quantile_regression(d, 0.01).pseudo_r2;
    const double median = quantile_regression(d, 0.5).pseudo_r2;
    if (tail > median) ++wins;
  }
  return expect(wins >= 90, "tail fit beat the median fit in only " +
                                std::to_string(wins) + "/100 runs");
}

// ---- 11: end-to-end determinism -------------------------------------------

int run_cli(const std::string& args) {
  const int rc = std::system((std::string(SRI_CLI_PATH) + " " + args).c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string without_timestamp(const std::string& text) {
  std::string out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("\"timestamp\":") != std::string::npos) continue;
    out += line;
    out += '\n';
  }
  return out;
}

bool end_to_end_determinism() {
  const fs::path out = fs::path(SRI_TEST_TMPDIR) / "acceptance_run";
  fs::remove_all(out);
  const std::string cmd = std::string("--config ") +
                          (fs::path(SRI_FIXTURE_DIR) / "engine.cfg").string() +
                          " --out " + out.string() + " --svg all";
  if (!expect(run_cli(cmd) == 0, "first full run failed")) return false;

  std::map<std::string, std::string> first;
  for (const auto& entry : fs::directory_iterator(out)) {
    if (entry.is_regular_file())
      first[entry.path().filename().string()] =
          csv::read_text(entry.path());
  }
  if (!expect(first.size() > 10,
              "first run emitted only " + std::to_string(first.size()) +
                  " artifacts"))
    return false;

  if (!expect(run_cli(cmd) == 0, "second full run failed")) return false;
  std::map<std::string, std::string> second;
  for (const auto& entry : fs::directory_iterator(out)) {
    if (entry.is_regular_file())
      second[entry.path().filename().string()] =
          csv::read_text(entry.path());
  }

  bool ok = expect(first.size() == second.size(), "artifact sets differ");
  for (const auto& [name, bytes] : first) {
    if (!second.count(name)) {
      ok &= expect(false, "artifact " + name + " missing from second run");
      continue;
    }
    if (name == "manifest.json") {
      ok &= expect(without_timestamp(bytes) ==
                       without_timestamp(second[name]),
                   "manifest.json differs beyond its timestamp");
    } else {
      ok &= expect(bytes == second[name], "artifact " + name + " differs");
    }
  }
  return ok;
}

struct Criterion {
  const char* label;
  bool (*fn)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"cap weights reproduce the reference composite shares",
       cap_weight_reproduction},
      {"global composition identity (mix of composites == weighted mix of "
       "markets)", composition_identity},
      {"realized-volatility closed form, zero floor, and scale invariance",
       rv_closed_form},
      {"implied-variance strip fixture and degenerate-chain error",
       implied_variance_strip},
      {"capital-shortfall fixtures, aggregation, and monotonicity",
       capital_shortfall},
      {"tail-VaR combine constants", catfin_constants},
      {"pinball solver matches enumeration oracles", solver_oracle_equivalence},
      {"pseudo-R² boundary values and nesting monotonicity",
       pseudo_r2_contract},
      {"risk-map rank invariance, no look-ahead, and occupancy",
       riskmap_properties},
      {"tail-only dependence dominates low-tau fits on synthetic panels",
       tail_dominance},
      {"end-to-end determinism of repeated full runs", end_to_end_determinism},
  };

  int failures = 0;
  int idx = 0;
  for (const auto& c : criteria) {
    ++idx;
    g_detail.clear();
    bool ok = false;
    try {
      ok = c.fn();
    } catch (const std::exception& e) {
      g_detail = std::string("unexpected exception: ") + e.what();
    }
    if (ok) {
      std::printf("[PASS] %2d %s\n", idx, c.label);
    } else {
      ++failures;
      std::printf("[FAIL] %2d %s%s%s\n", idx, c.label,
                  g_detail.empty() ? "" : " — ", g_detail.c_str());
    }
  }
  if (failures == 0) {
    std::printf("acceptance: all %d criteria passed\n", idx);
  } else {
    std::printf("acceptance: %d of %d criteria FAILED\n", failures, idx);
  }
  return failures;
}
