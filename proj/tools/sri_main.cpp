#include <cstdio>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "sri/config.hpp"
#include "sri/csv.hpp"
#include "sri/errors.hpp"
#include "sri/pipeline.hpp"
#include "sri/volatility.hpp"

namespace {

sri::OverlapMode parse_overlap(const std::string& s) {
  if (s == "on") return sri::OverlapMode::On;
  if (s == "off") return sri::OverlapMode::Off;
  if (s == "both") return sri::OverlapMode::Both;
  throw sri::ConfigError("--overlap must be on, off, or both (got '" + s +
                         "')");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"systemic-risk analytics engine"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string overlap;
  int lags = 0;
  bool svg = false;
  app.add_option("--config", config_path, "engine configuration file");
  auto* out_opt = app.add_option("--out", out_dir, "output directory");
  app.add_flag("--svg", svg, "emit heat-strip SVGs with the riskmap stage");
  auto* lags_opt =
      app.add_option("--lags", lags, "override the battery lag depth");
  app.add_option("--overlap", overlap,
                 "override the battery overlap mode: on, off, or both");

  app.add_subcommand("validate", "check the configuration and input files");
  auto* ind = app.add_subcommand(
      "indicator", "compute the indicator family (or price one chain)");
  app.add_subcommand("riskmap", "classify indicators into quantile buckets");
  app.add_subcommand("stats", "descriptive statistics and correlations");
  app.add_subcommand("benchmarks", "closed-form benchmark computations");
  app.add_subcommand("evaluate", "run the regression battery");
  app.add_subcommand("report", "render SVG charts");
  app.add_subcommand("all", "run every stage");

  std::string chain_csv;
  double chain_expiry = 0.0;
  double chain_rate = 0.0;
  double chain_forward = 0.0;
  auto* chain_opt = ind->add_option(
      "--chain", chain_csv, "option-chain CSV (strike,quote): print the "
      "implied-variance index for one slice and exit");
  ind->add_option("--chain-expiry", chain_expiry, "time to expiry in years")
      ->needs(chain_opt);
  ind->add_option("--chain-rate", chain_rate, "annualized risk-free rate")
      ->needs(chain_opt);
  ind->add_option("--chain-forward", chain_forward, "forward index level")
      ->needs(chain_opt);
  chain_opt->needs(ind->get_option("--chain-expiry"));
  chain_opt->needs(ind->get_option("--chain-forward"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const std::string verb = app.get_subcommands().front()->get_name();

    if (verb == "indicator" && !chain_csv.empty()) {
      const sri::OptionChainSlice slice = sri::csv::read_chain(
          chain_csv, chain_expiry, chain_rate, chain_forward);
      std::printf("%s\n",
                  sri::csv::fmt_double(implied_variance_index(slice)).c_str());
      return 0;
    }

    if (config_path.empty()) throw sri::ConfigError("--config is required");
    sri::EngineConfig cfg = sri::load_config(config_path);
    if (out_opt->count() > 0) cfg.output_dir = out_dir;
    if (lags_opt->count() > 0) cfg.battery.lags = lags;
    if (!overlap.empty()) cfg.battery.overlap = parse_overlap(overlap);
    cfg.validate();

    if (verb == "validate") {
      std::printf("config OK: %zu market(s), output -> %s\n",
                  cfg.markets.size(), cfg.output_dir.string().c_str());
      return 0;
    }

    std::set<std::string> stages;
    if (verb == "all") {
      stages = {"indicator", "riskmap",  "stats",
                "benchmarks", "evaluate", "report"};
    } else {
      stages = {verb};
    }
    sri::StageOptions opts;
    opts.svg = svg;
    run_pipeline(cfg, stages, opts);
    return 0;
  } catch (const sri::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const sri::IngestError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const sri::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const sri::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
