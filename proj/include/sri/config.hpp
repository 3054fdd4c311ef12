#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sri/regression.hpp"
#include "sri/riskmap.hpp"

namespace sri {

// One market's inputs: a daily price CSV, a published implied-vol index CSV,
// and the market capitalization used for composite weighting.
struct MarketConfig {
  std::string name;
  std::filesystem::path price_csv;
  std::filesystem::path iv_csv;
  double cap = 0.0;
};

// Optional benchmark inputs. Level series feed the regression battery;
// firm/DD/VaR files feed the closed-form benchmark computations.
struct BenchmarkConfig {
  std::optional<std::filesystem::path> srisk_csv;
  std::optional<std::filesystem::path> catfin_csv;
  std::optional<std::filesystem::path> ciss_csv;
  std::optional<std::filesystem::path> cleveland_csv;
  std::optional<std::filesystem::path> firm_csv;
  std::optional<std::filesystem::path> dd_panel_csv;
  std::optional<std::filesystem::path> pdd_csv;
  std::optional<std::filesystem::path> var_gpd_csv;
  std::optional<std::filesystem::path> var_sged_csv;
  std::optional<std::filesystem::path> var_np_csv;
  double k = 0.08;
  int extended_days = 20;
};

enum class OverlapMode { On, Off, Both };

// Regression-battery parameterization.
struct BatteryConfig {
  int lags = 5;
  int horizon = 5;  // trading days per "weekly" return
  ReturnKind return_kind = ReturnKind::Simple;
  std::vector<ThresholdSpec> thresholds{
      ThresholdSpec::mean(),      ThresholdSpec::pct(0.25),
      ThresholdSpec::pct(0.10),   ThresholdSpec::pct(0.05),
      ThresholdSpec::pct(0.025),  ThresholdSpec::pct(0.01)};
  std::vector<double> taus{0.5, 0.25, 0.1, 0.05, 0.025, 0.01};
  OverlapMode overlap = OverlapMode::Both;
};

struct EngineConfig {
  std::filesystem::path config_path;  // where this config was loaded from
  std::filesystem::path output_dir = "out";
  std::vector<MarketConfig> markets;
  int rv_window = 21;
  double annualization = 252.0;
  double rv_scale = 100.0;  // multiplies RV before mixing with IV points
  double w_iv = 0.5;
  std::string response_market;  // defaults to the first market
  MapPolicy riskmap;
  BatteryConfig battery;
  BenchmarkConfig benchmarks;

  // Range checks plus existence of every referenced input file; throws
  // ConfigError listing all problems at once.
  void validate() const;
};

// Parses the flat key/value format with one [market <name>] table per
// market plus optional [riskmap], [regression], and [benchmarks] tables.
// Relative paths resolve against the config file's directory. Unknown keys
// and sections are errors.
EngineConfig load_config(const std::filesystem::path& path);

}  // namespace sri
