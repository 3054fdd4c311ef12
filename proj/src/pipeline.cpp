#include "sri/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <optional>
#include <vector>

#include <json.hpp>

#include "sri/benchmarks.hpp"
#include "sri/csv.hpp"
#include "sri/errors.hpp"
#include "sri/indicator.hpp"
#include "sri/regression.hpp"
#include "sri/riskmap.hpp"
#include "sri/stats.hpp"
#include "sri/svg.hpp"
#include "sri/volatility.hpp"

namespace sri {
namespace {

using njson = nlohmann::json;

std::string utc_timestamp() {
  const std::time_t tt =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Everything the stages share: configuration, lazily built intermediate
// data, and the manifest being accumulated.
struct Workspace {
  EngineConfig cfg;
  StageOptions opts;
  std::filesystem::path out;

  njson inputs = njson::object();
  njson outputs = njson::object();
  njson stage_notes = njson::object();
  njson dropped = njson::object();

  std::optional<std::vector<TimeSeries>> prices;  // renamed to market names
  std::optional<std::vector<TimeSeries>> iv_raw;
  std::optional<IndicatorSet> set;
  std::optional<std::vector<TimeSeries>> levels;  // SRI level series
  std::optional<std::vector<RiskMap>> maps;       // global first
  std::optional<std::vector<std::string>> map_labels;

  void note_input(const std::filesystem::path& p) {
    inputs[p.string()] = csv::file_digest(p);
  }
  void emit(const std::string& name, const std::string& content) {
    const auto path = out / name;
    csv::write_text_atomic(path, content);
    outputs[name] = csv::file_digest(path);
  }
  void emit_panel(const std::string& name,
                  const std::vector<TimeSeries>& cols) {
    const auto path = out / name;
    csv::write_series_panel(path, cols);
    outputs[name] = csv::file_digest(path);
  }
  void emit_table(const std::string& name,
                  const std::vector<std::string>& header,
                  const std::vector<std::vector<std::string>>& rows) {
    const auto path = out / name;
    csv::write_table(path, header, rows);
    outputs[name] = csv::file_digest(path);
  }
};

const std::vector<TimeSeries>& market_prices(Workspace& ws) {
  if (!ws.prices) {
    std::vector<TimeSeries> ps;
    for (const auto& m : ws.cfg.markets) {
      ws.note_input(m.price_csv);
      ps.push_back(csv::read_series(m.price_csv).renamed(m.name));
    }
    ws.prices = std::move(ps);
  }
  return *ws.prices;
}

const std::vector<TimeSeries>& market_iv(Workspace& ws) {
  if (!ws.iv_raw) {
    std::vector<TimeSeries> ivs;
    for (const auto& m : ws.cfg.markets) {
      ws.note_input(m.iv_csv);
      ivs.push_back(csv::read_series(m.iv_csv).renamed(m.name));
    }
    ws.iv_raw = std::move(ivs);
  }
  return *ws.iv_raw;
}

const IndicatorSet& indicator_set(Workspace& ws) {
  if (!ws.set) {
    const auto& prices = market_prices(ws);
    const auto& ivs = market_iv(ws);
    const RVParams rvp{ws.cfg.rv_window, ws.cfg.annualization};
    std::vector<TimeSeries> rvs;
    for (const auto& p : prices) {
      TimeSeries rv = realized_vol(p, rvp);
      rvs.push_back(
          rv.with_values(rv.values() * ws.cfg.rv_scale, rv.name()));
    }
    std::vector<std::string> names;
    std::vector<double> caps;
    for (const auto& m : ws.cfg.markets) {
      names.push_back(m.name);
      caps.push_back(m.cap);
    }
    ws.set = build_indicator_set(ivs, rvs, cap_weights(caps, names),
                                 MixWeights::iv_share(ws.cfg.w_iv));
  }
  return *ws.set;
}

// Canonical benchmark-series order used across stats and battery tables.
const std::vector<TimeSeries>& sri_levels(Workspace& ws) {
  if (!ws.levels) {
    std::vector<TimeSeries> out;
    auto add = [&ws, &out](const std::optional<std::filesystem::path>& path,
                           const std::string& name) {
      if (!path) return;
      ws.note_input(*path);
      out.push_back(csv::read_series(*path).renamed(name));
    };
    add(ws.cfg.benchmarks.catfin_csv, "catfin");
    add(ws.cfg.benchmarks.ciss_csv, "ciss");
    out.push_back(indicator_set(ws).global.renamed("IVRVSRI"));
    add(ws.cfg.benchmarks.srisk_csv, "srisk");
    add(ws.cfg.benchmarks.cleveland_csv, "cleveland");
    ws.levels = std::move(out);
  }
  return *ws.levels;
}

const std::vector<RiskMap>& risk_maps(Workspace& ws) {
  if (!ws.maps) {
    const IndicatorSet& set = indicator_set(ws);
    std::vector<RiskMap> maps;
    std::vector<std::string> labels;
    maps.push_back(classify(set.global, ws.cfg.riskmap));
    labels.push_back("IVRVSRI");
    for (std::size_t i = 0; i < set.country.size(); ++i) {
      maps.push_back(classify(set.country[i], ws.cfg.riskmap));
      labels.push_back(set.markets[i]);
    }
    ws.maps = std::move(maps);
    ws.map_labels = std::move(labels);
  }
  return *ws.maps;
}

// ---------------------------------------------------------------- stages

void stage_indicator(Workspace& ws) {
  const IndicatorSet& set = indicator_set(ws);
  std::vector<TimeSeries> cols;
  for (const auto& s : set.iv) cols.push_back(s);
  for (const auto& s : set.rv) cols.push_back(s);
  for (const auto& s : set.country) cols.push_back(s);
  cols.push_back(set.ivsri);
  cols.push_back(set.rvsri);
  cols.push_back(set.global.renamed("IVRVSRI"));
  ws.emit_panel("indicator.csv", cols);
  ws.stage_notes["indicator"] = {{"dates", set.global.size()},
                                 {"markets", set.markets.size()}};
}

std::vector<std::vector<std::string>> riskmap_rows(const RiskMap& map) {
  std::vector<std::vector<std::string>> rows;
  const int nb = map.policy.n_buckets();
  for (Eigen::Index t = 0; t < map.indicator.size(); ++t) {
    const int b = map.bucket[static_cast<std::size_t>(t)];
    rows.push_back({map.indicator.date(t).to_string(),
                    csv::fmt_double(map.indicator.value(t)),
                    b > 0 ? std::to_string(b) : "",
                    bucket_label(b, nb)});
  }
  return rows;
}

void stage_riskmap(Workspace& ws) {
  const auto& maps = risk_maps(ws);
  const auto& labels = *ws.map_labels;
  njson notes = njson::object();
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const std::string name =
        i == 0 ? "riskmap.csv" : "riskmap_" + labels[i] + ".csv";
    ws.emit_table(name, {"date", "value", "bucket", "color"},
                  riskmap_rows(maps[i]));
    notes[labels[i]] = {{"classified", maps[i].n_classified},
                        {"degenerate_windows", maps[i].degenerate_windows}};
  }
  if (ws.opts.svg) {
    ws.emit("riskmap.svg",
            svg::heat_strips(maps, labels, "risk regimes (quantile buckets)"));
  }
  ws.stage_notes["riskmap"] = std::move(notes);
}

std::vector<std::vector<std::string>> describe_rows(
    const std::vector<StatsSummary>& sums) {
  auto count_row = [&sums](const std::string& label, auto getter) {
    std::vector<std::string> row{label};
    for (const auto& s : sums) row.push_back(std::to_string(getter(s)));
    return row;
  };
  auto value_row = [&sums](const std::string& label, auto getter) {
    std::vector<std::string> row{label};
    for (const auto& s : sums) row.push_back(csv::fmt_double(getter(s)));
    return row;
  };
  return {
      count_row("nobs", [](const StatsSummary& s) { return s.nobs; }),
      count_row("missing", [](const StatsSummary& s) { return s.n_missing; }),
      value_row("min", [](const StatsSummary& s) { return s.min; }),
      value_row("q1", [](const StatsSummary& s) { return s.q1; }),
      value_row("mean", [](const StatsSummary& s) { return s.mean; }),
      value_row("median", [](const StatsSummary& s) { return s.median; }),
      value_row("q3", [](const StatsSummary& s) { return s.q3; }),
      value_row("max", [](const StatsSummary& s) { return s.max; }),
      value_row("stdev", [](const StatsSummary& s) { return s.stdev; }),
      value_row("skewness", [](const StatsSummary& s) { return s.skewness; }),
      value_row("excess_kurtosis",
                [](const StatsSummary& s) { return s.kurtosis; }),
      value_row("jb_stat", [](const StatsSummary& s) { return s.jb_stat; }),
      value_row("jb_pvalue",
                [](const StatsSummary& s) { return s.jb_pvalue; }),
  };
}

std::vector<std::vector<std::string>> correlation_rows(
    const CorrelationMatrix& cm) {
  std::vector<std::vector<std::string>> rows;
  for (Eigen::Index i = 0; i < cm.entries.rows(); ++i) {
    std::vector<std::string> row{cm.labels[static_cast<std::size_t>(i)]};
    for (Eigen::Index j = 0; j < cm.entries.cols(); ++j)
      row.push_back(csv::fmt_double(cm.entries(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// The weekly-return panel shared by the stats tables and the battery:
// response-market prices first, then the SRI levels, intersect-aligned and
// differenced with one shared convention.
std::vector<ReturnSeries> weekly_panel(Workspace& ws, bool overlap) {
  const auto& prices = market_prices(ws);
  const TimeSeries* resp = nullptr;
  for (const auto& p : prices) {
    if (p.name() == ws.cfg.response_market) resp = &p;
  }
  if (!resp) throw ConfigError("response market not found");

  std::vector<TimeSeries> panel{*resp};
  for (const auto& s : sri_levels(ws)) panel.push_back(s);
  panel = align(panel, AlignPolicy::Intersect);

  std::vector<ReturnSeries> out;
  for (const auto& s : panel) {
    out.push_back(compute_returns(s, ws.cfg.battery.return_kind,
                                  ws.cfg.battery.horizon, overlap));
  }
  return out;
}

void stage_stats(Workspace& ws) {
  const auto& prices = market_prices(ws);

  // Daily log returns, one column per market.
  {
    std::vector<std::string> header{"stat"};
    std::vector<StatsSummary> sums;
    for (const auto& p : prices) {
      header.push_back(p.name());
      sums.push_back(
          describe(compute_returns(p, ReturnKind::Log, 1, true).base));
    }
    ws.emit_table("stats_daily_returns.csv", header, describe_rows(sums));
  }

  // Drawdowns of every market on one calendar.
  {
    std::vector<TimeSeries> dds;
    for (const auto& p : prices) dds.push_back(drawdown(p));
    ws.emit_panel("drawdowns.csv", align(dds, AlignPolicy::Union));
  }

  // Weekly-return descriptives of the SRI series and the two correlation
  // tables (contemporaneous and column-lagged).
  {
    std::vector<ReturnSeries> weekly = weekly_panel(ws, /*overlap=*/true);
    std::vector<std::string> header{"stat"};
    std::vector<StatsSummary> sums;
    for (std::size_t i = 1; i < weekly.size(); ++i) {  // SRIs only
      header.push_back(weekly[i].base.name());
      sums.push_back(describe(weekly[i].base));
    }
    ws.emit_table("stats_sri_weekly_returns.csv", header, describe_rows(sums));

    std::vector<TimeSeries> panel;
    for (const auto& r : weekly) panel.push_back(r.base);
    const CorrelationMatrix c0 = correlation_matrix(panel, 0);
    std::vector<std::string> chead{"series"};
    for (const auto& l : c0.labels) chead.push_back(l);
    ws.emit_table("correlation_weekly_lag0.csv", chead, correlation_rows(c0));
    const CorrelationMatrix c5 =
        correlation_matrix(panel, ws.cfg.battery.horizon);
    ws.emit_table("correlation_weekly_lag" +
                      std::to_string(ws.cfg.battery.horizon) + ".csv",
                  chead, correlation_rows(c5));
    njson diag = njson::array();
    for (const auto& d : c5.diagnostics) diag.push_back(d);
    ws.stage_notes["stats"] = {{"markets", prices.size()},
                               {"sri_series", sums.size()},
                               {"correlation_diagnostics", diag}};
  }
}

void stage_benchmarks(Workspace& ws) {
  const BenchmarkConfig& b = ws.cfg.benchmarks;
  njson notes = njson::object();

  if (b.firm_csv) {
    ws.note_input(*b.firm_csv);
    const auto firms = csv::read_firms(*b.firm_csv, b.k);
    std::vector<std::vector<std::string>> rows;
    std::vector<double> values;
    for (const auto& f : firms) {
      const double v = srisk_firm(f);
      values.push_back(v);
      rows.push_back({f.name, csv::fmt_double(f.equity),
                      csv::fmt_double(f.debt), csv::fmt_double(f.lrmes),
                      csv::fmt_double(f.k), csv::fmt_double(v)});
    }
    const double total = srisk_aggregate(values);
    rows.push_back({"AGGREGATE", "", "", "", "", csv::fmt_double(total)});
    ws.emit_table("srisk_firms.csv", {"name", "W", "D", "lrmes", "k", "srisk"},
                  rows);
    notes["srisk"] = {{"firms", firms.size()}, {"aggregate", total}};
  }

  if (b.dd_panel_csv && b.pdd_csv) {
    ws.note_input(*b.dd_panel_csv);
    ws.note_input(*b.pdd_csv);
    std::vector<TimeSeries> panel = csv::read_panel(*b.dd_panel_csv);
    panel.push_back(csv::read_series(*b.pdd_csv));
    panel = align(panel, AlignPolicy::Union);
    const TimeSeries pdd = panel.back();
    panel.pop_back();
    const ClevelandResult res =
        cleveland_spread(panel, pdd, b.extended_days);
    std::vector<std::vector<std::string>> rows;
    Eigen::Index n_major = 0, n_elev = 0;
    for (Eigen::Index t = 0; t < res.spread.size(); ++t) {
      const double s = res.spread.value(t);
      const bool present = !is_missing(s);
      const auto i = static_cast<std::size_t>(t);
      if (res.major_stress[i]) ++n_major;
      if (res.elevated[i]) ++n_elev;
      rows.push_back({res.spread.date(t).to_string(), csv::fmt_double(s),
                      present ? (res.major_stress[i] ? "1" : "0") : "",
                      present ? (res.elevated[i] ? "1" : "0") : ""});
    }
    ws.emit_table("cleveland.csv",
                  {"date", "spread", "major_stress", "elevated"}, rows);
    notes["cleveland"] = {{"dates", res.spread.size()},
                          {"major_stress_days", n_major},
                          {"elevated_days", n_elev},
                          {"extended_days", res.extended_days}};
  }

  if (b.var_gpd_csv && b.var_sged_csv && b.var_np_csv) {
    ws.note_input(*b.var_gpd_csv);
    ws.note_input(*b.var_sged_csv);
    ws.note_input(*b.var_np_csv);
    std::vector<TimeSeries> legs{
        standardize(csv::read_series(*b.var_gpd_csv)),
        standardize(csv::read_series(*b.var_sged_csv)),
        standardize(csv::read_series(*b.var_np_csv))};
    legs = align(legs, AlignPolicy::Union);
    Eigen::VectorXd v(legs[0].size());
    for (Eigen::Index t = 0; t < legs[0].size(); ++t) {
      const double g = legs[0].value(t);
      const double s = legs[1].value(t);
      const double np = legs[2].value(t);
      v[t] = (is_missing(g) || is_missing(s) || is_missing(np))
                 ? kMissing
                 : catfin_combine(g, s, np);
    }
    const TimeSeries catfin = legs[0].with_values(std::move(v), "catfin");
    ws.emit_panel("catfin.csv", {catfin});
    notes["catfin"] = {{"dates", catfin.size()},
                       {"present", catfin.n_present()}};
  }

  if (notes.empty()) notes["skipped"] = "no benchmark inputs configured";
  ws.stage_notes["benchmarks"] = std::move(notes);
}

// ------------------------------------------------------------- battery

struct BatteryRun {
  njson record;
  std::string cell;  // formatted fit metric, empty on failure
};

template <typename Fit>
BatteryRun battery_run(njson base, Fit&& fit) {
  BatteryRun out;
  out.record = std::move(base);
  try {
    const RegressionReport rep = fit();
    njson coeffs = njson::object();
    for (Eigen::Index j = 0; j < rep.coefficients.size(); ++j)
      coeffs[rep.labels[static_cast<std::size_t>(j)]] = rep.coefficients[j];
    out.record["coefficients"] = std::move(coeffs);
    out.record["n_obs"] = rep.n_obs;
    out.record["rows_total"] = rep.rows_total;
    out.record["rows_kept"] = rep.rows_kept;
    double metric = kMissing;
    if (rep.kind == ModelKind::Quantile) {
      out.record["objective"] = rep.objective;
      out.record["objective_restricted"] = rep.objective_restricted;
      out.record["pseudo_r2"] = rep.pseudo_r2;
      metric = rep.pseudo_r2;
    } else {
      out.record["r2"] = rep.r2;
      out.record["adjusted_r2"] = rep.adjusted_r2;
      metric = rep.adjusted_r2;
      if (rep.kind == ModelKind::QuasiQuantile &&
          !is_missing(rep.threshold_value))
        out.record["threshold_value"] = rep.threshold_value;
    }
    out.cell = csv::fmt_double(metric);
  } catch (const Error& e) {
    out.record["error"] = e.what();
    out.cell = "";
  }
  return out;
}

void stage_evaluate(Workspace& ws) {
  const BatteryConfig& bat = ws.cfg.battery;
  std::vector<bool> modes;
  if (bat.overlap == OverlapMode::On || bat.overlap == OverlapMode::Both)
    modes.push_back(true);
  if (bat.overlap == OverlapMode::Off || bat.overlap == OverlapMode::Both)
    modes.push_back(false);
  std::vector<int> lag_depths{1};
  if (bat.lags != 1) lag_depths.push_back(bat.lags);

  njson runs = njson::array();
  Eigen::Index failures = 0;
  auto push = [&runs, &failures](BatteryRun r) {
    if (r.record.contains("error")) ++failures;
    runs.push_back(std::move(r.record));
    return r.cell;
  };

  for (bool overlap : modes) {
    const std::string mode = overlap ? "overlap" : "nonoverlap";
    std::vector<ReturnSeries> weekly = weekly_panel(ws, overlap);
    const ReturnSeries& resp = weekly.front();
    const std::vector<ReturnSeries> preds(weekly.begin() + 1, weekly.end());
    std::vector<std::string> pred_names;
    for (const auto& p : preds) pred_names.push_back(p.base.name());
    auto base = [&](const char* model, const std::string& label, int lags) {
      return njson{{"model", model},
                   {"overlap", overlap},
                   {"predictor_set", label},
                   {"lag_depth", lags}};
    };

    // Plain least squares: one column per single-predictor model plus the
    // joint model over every predictor.
    {
      std::vector<std::string> header{"lag"};
      for (const auto& n : pred_names) header.push_back(n);
      header.push_back("all");
      std::vector<std::vector<std::string>> rows;
      for (int lags : lag_depths) {
        std::vector<std::string> row{std::to_string(lags)};
        for (const auto& p : preds) {
          row.push_back(push(battery_run(
              base("ols", p.base.name(), lags),
              [&] { return ols(build_design(resp, {p}, lags)); })));
        }
        row.push_back(push(battery_run(base("ols", "all", lags), [&] {
          LaggedDesign d = build_design(resp, preds, lags);
          for (const auto& line : d.dropped_log)
            ws.dropped["battery:" + mode + ":lag" +
                       std::to_string(lags)].push_back(line);
          return ols(d);
        })));
        rows.push_back(std::move(row));
      }
      ws.emit_table("battery_ols_" + mode + ".csv", header, rows);
    }

    // Below-threshold least squares per predictor.
    {
      std::vector<std::string> header{"threshold", "lag"};
      for (const auto& n : pred_names) header.push_back(n);
      std::vector<std::vector<std::string>> rows;
      for (const auto& th : bat.thresholds) {
        for (int lags : lag_depths) {
          std::vector<std::string> row{th.label(), std::to_string(lags)};
          for (const auto& p : preds) {
            njson rec = base("quasi_quantile", p.base.name(), lags);
            rec["threshold"] = th.label();
            row.push_back(push(battery_run(std::move(rec), [&] {
              return quasi_quantile_ols(build_design(resp, {p}, lags), th);
            })));
          }
          rows.push_back(std::move(row));
        }
      }
      ws.emit_table("battery_quasi_quantile_" + mode + ".csv", header, rows);
    }

    // Quantile regression per predictor.
    {
      std::vector<std::string> header{"tau", "lag"};
      for (const auto& n : pred_names) header.push_back(n);
      std::vector<std::vector<std::string>> rows;
      for (double tau : bat.taus) {
        for (int lags : lag_depths) {
          std::vector<std::string> row{csv::fmt_double(tau),
                                       std::to_string(lags)};
          for (const auto& p : preds) {
            njson rec = base("quantile", p.base.name(), lags);
            rec["tau"] = tau;
            row.push_back(push(battery_run(std::move(rec), [&] {
              return quantile_regression(build_design(resp, {p}, lags), tau);
            })));
          }
          rows.push_back(std::move(row));
        }
      }
      ws.emit_table("battery_quantile_" + mode + ".csv", header, rows);
    }
  }

  njson doc;
  doc["schema_version"] = 1;
  doc["horizon"] = bat.horizon;
  doc["return_kind"] = bat.return_kind == ReturnKind::Log ? "log" : "simple";
  doc["lags"] = bat.lags;
  njson ths = njson::array();
  for (const auto& th : bat.thresholds) ths.push_back(th.label());
  doc["thresholds"] = std::move(ths);
  doc["taus"] = bat.taus;
  doc["response_market"] = ws.cfg.response_market;
  doc["runs"] = std::move(runs);
  ws.emit("battery.json", doc.dump(2) + "\n");
  ws.stage_notes["evaluate"] = {{"runs", doc["runs"].size()},
                                {"failed", failures}};
}

void stage_report(Workspace& ws) {
  const IndicatorSet& set = indicator_set(ws);
  ws.emit("chart_indicator.svg",
          svg::line_chart({set.ivsri, set.rvsri, set.global.renamed("IVRVSRI")},
                          "systemic risk indicator and composites"));
  ws.emit("chart_riskmaps.svg",
          svg::heat_strips(risk_maps(ws), *ws.map_labels,
                           "risk regimes (quantile buckets)"));
  std::vector<TimeSeries> dds;
  for (const auto& p : market_prices(ws)) dds.push_back(drawdown(p));
  ws.emit("chart_drawdowns.svg",
          svg::line_chart(align(dds, AlignPolicy::Union),
                          "drawdowns from running maximum"));
  ws.stage_notes["report"] = {{"charts", 3}};
}

// Prefixes errors with the failing stage; the concrete classes that map to
// distinct exit codes survive, everything else degrades to the base class.
template <typename Fn>
void run_stage(const std::string& name, Fn&& fn) {
  auto tag = [&name](const std::exception& e) {
    return "[" + name + "] " + e.what();
  };
  try {
    fn();
  } catch (const ConfigError& e) {
    throw ConfigError(tag(e));
  } catch (const IngestError& e) {
    throw IngestError(tag(e));
  } catch (const IoError& e) {
    throw IoError(tag(e));
  } catch (const Error& e) {
    throw Error(tag(e));
  }
}

njson config_snapshot(const EngineConfig& cfg) {
  njson j;
  j["output_dir"] = cfg.output_dir.string();
  j["rv_window"] = cfg.rv_window;
  j["annualization"] = cfg.annualization;
  j["rv_scale"] = cfg.rv_scale;
  j["w_iv"] = cfg.w_iv;
  j["response_market"] = cfg.response_market;
  njson markets = njson::array();
  for (const auto& m : cfg.markets) {
    markets.push_back({{"name", m.name},
                       {"price_csv", m.price_csv.string()},
                       {"iv_csv", m.iv_csv.string()},
                       {"cap", m.cap}});
  }
  j["markets"] = std::move(markets);
  j["riskmap"] = {
      {"breakpoints", cfg.riskmap.breakpoints},
      {"window", cfg.riskmap.window == MapPolicy::Window::Expanding
                     ? "expanding"
                     : "rolling"},
      {"rolling_length", cfg.riskmap.rolling_length},
      {"warmup", cfg.riskmap.warmup},
      {"exclude_current", cfg.riskmap.exclude_current}};
  njson ths = njson::array();
  for (const auto& th : cfg.battery.thresholds) ths.push_back(th.label());
  j["regression"] = {
      {"lags", cfg.battery.lags},
      {"horizon", cfg.battery.horizon},
      {"return_kind",
       cfg.battery.return_kind == ReturnKind::Log ? "log" : "simple"},
      {"thresholds", std::move(ths)},
      {"taus", cfg.battery.taus},
      {"overlap", cfg.battery.overlap == OverlapMode::On
                      ? "on"
                      : (cfg.battery.overlap == OverlapMode::Off ? "off"
                                                                 : "both")}};
  njson bm = njson::object();
  auto put = [&bm](const char* key,
                   const std::optional<std::filesystem::path>& p) {
    if (p) bm[key] = p->string();
  };
  put("srisk_csv", cfg.benchmarks.srisk_csv);
  put("catfin_csv", cfg.benchmarks.catfin_csv);
  put("ciss_csv", cfg.benchmarks.ciss_csv);
  put("cleveland_csv", cfg.benchmarks.cleveland_csv);
  put("firm_csv", cfg.benchmarks.firm_csv);
  put("dd_panel_csv", cfg.benchmarks.dd_panel_csv);
  put("pdd_csv", cfg.benchmarks.pdd_csv);
  put("var_gpd_csv", cfg.benchmarks.var_gpd_csv);
  put("var_sged_csv", cfg.benchmarks.var_sged_csv);
  put("var_np_csv", cfg.benchmarks.var_np_csv);
  bm["k"] = cfg.benchmarks.k;
  bm["extended_days"] = cfg.benchmarks.extended_days;
  j["benchmarks"] = std::move(bm);
  return j;
}

}  // namespace

void run_pipeline(const EngineConfig& config,
                  const std::set<std::string>& stages,
                  const StageOptions& opts) {
  Workspace ws;
  ws.cfg = config;
  ws.opts = opts;
  if (opts.out_override) ws.cfg.output_dir = *opts.out_override;
  if (opts.lags_override) ws.cfg.battery.lags = *opts.lags_override;
  if (opts.overlap_override) ws.cfg.battery.overlap = *opts.overlap_override;
  ws.out = ws.cfg.output_dir;

  static const std::vector<std::string> kOrder = {
      "indicator", "riskmap", "stats", "benchmarks", "evaluate", "report"};
  for (const auto& s : stages) {
    if (std::find(kOrder.begin(), kOrder.end(), s) == kOrder.end())
      throw ConfigError("unknown stage '" + s + "'");
  }

  for (const auto& s : kOrder) {
    if (!stages.count(s)) continue;
    run_stage(s, [&] {
      if (s == "indicator") stage_indicator(ws);
      if (s == "riskmap") stage_riskmap(ws);
      if (s == "stats") stage_stats(ws);
      if (s == "benchmarks") stage_benchmarks(ws);
      if (s == "evaluate") stage_evaluate(ws);
      if (s == "report") stage_report(ws);
    });
  }

  njson manifest;
  manifest["engine_version"] = kEngineVersion;
  manifest["schema_version"] = 1;
  manifest["timestamp"] = utc_timestamp();
  manifest["config"] = config_snapshot(ws.cfg);
  manifest["inputs"] = std::move(ws.inputs);
  manifest["outputs"] = std::move(ws.outputs);
  manifest["stages"] = std::move(ws.stage_notes);
  manifest["dropped_rows"] = std::move(ws.dropped);
  csv::write_text_atomic(ws.out / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace sri
