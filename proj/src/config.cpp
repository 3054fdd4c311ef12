#include "sri/config.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include "sri/csv.hpp"
#include "sri/errors.hpp"

namespace sri {

namespace {

std::string strip(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r'))
    --b;
  return std::string(s.substr(a, b - a));
}

double to_double(const std::string& v, const std::string& key) {
  double out;
  const char* first = v.data();
  if (!v.empty() && v[0] == '+') ++first;
  auto res = std::from_chars(first, v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size() ||
      std::isnan(out)) {
    throw ConfigError("config key '" + key + "': '" + v + "' is not a number");
  }
  return out;
}

int to_int(const std::string& v, const std::string& key) {
  int out;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw ConfigError("config key '" + key + "': '" + v +
                      "' is not an integer");
  }
  return out;
}

bool to_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  throw ConfigError("config key '" + key + "': '" + v + "' is not a boolean");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    const std::size_t comma = v.find(',', start);
    const std::string item =
        strip(std::string_view(v).substr(start, comma == std::string::npos
                                                    ? std::string::npos
                                                    : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

EngineConfig load_config(const std::filesystem::path& path) {
  const std::string text = csv::read_text(path);
  const std::filesystem::path base = path.has_parent_path()
                                         ? path.parent_path()
                                         : std::filesystem::path(".");
  auto resolve = [&base](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };

  EngineConfig cfg;
  cfg.config_path = path;
  cfg.output_dir = base / "out";

  enum class Section { Top, Market, Riskmap, Regression, Benchmarks };
  Section section = Section::Top;
  MarketConfig* market = nullptr;
  bool battery_thresholds_set = false;
  bool battery_taus_set = false;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    std::string line = text.substr(
        start, nl == std::string::npos ? std::string::npos : nl - start);
    start = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = strip(line);
    if (line.empty()) continue;
    const std::string at = " (line " + std::to_string(line_no) + ")";

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config: unterminated section header" + at);
      const std::string name = strip(line.substr(1, line.size() - 2));
      if (name.rfind("market ", 0) == 0) {
        MarketConfig m;
        m.name = strip(name.substr(7));
        if (m.name.empty())
          throw ConfigError("config: market section without a name" + at);
        cfg.markets.push_back(std::move(m));
        market = &cfg.markets.back();
        section = Section::Market;
      } else if (name == "riskmap") {
        section = Section::Riskmap;
      } else if (name == "regression") {
        section = Section::Regression;
      } else if (name == "benchmarks") {
        section = Section::Benchmarks;
      } else {
        throw ConfigError("config: unknown section '" + name + "'" + at);
      }
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected 'key = value'" + at);
    const std::string key = strip(std::string_view(line).substr(0, eq));
    const std::string val = strip(std::string_view(line).substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError("config: empty key or value" + at);

    switch (section) {
      case Section::Top:
        if (key == "output_dir") {
          cfg.output_dir = resolve(val);
        } else if (key == "rv_window") {
          cfg.rv_window = to_int(val, key);
        } else if (key == "annualization") {
          cfg.annualization = to_double(val, key);
        } else if (key == "rv_scale") {
          cfg.rv_scale = to_double(val, key);
        } else if (key == "w_iv") {
          cfg.w_iv = to_double(val, key);
        } else if (key == "response_market") {
          cfg.response_market = val;
        } else {
          throw ConfigError("config: unknown key '" + key + "'" + at);
        }
        break;

      case Section::Market:
        if (key == "price_csv") {
          market->price_csv = resolve(val);
        } else if (key == "iv_csv") {
          market->iv_csv = resolve(val);
        } else if (key == "cap") {
          market->cap = to_double(val, key);
        } else {
          throw ConfigError("config: unknown market key '" + key + "'" + at);
        }
        break;

      case Section::Riskmap:
        if (key == "breakpoints") {
          cfg.riskmap.breakpoints.clear();
          for (const auto& item : split_list(val))
            cfg.riskmap.breakpoints.push_back(to_double(item, key));
        } else if (key == "window") {
          if (val == "expanding") {
            cfg.riskmap.window = MapPolicy::Window::Expanding;
          } else if (val == "rolling") {
            cfg.riskmap.window = MapPolicy::Window::Rolling;
          } else {
            throw ConfigError(
                "config: window must be 'expanding' or 'rolling'" + at);
          }
        } else if (key == "rolling_length") {
          cfg.riskmap.rolling_length = to_int(val, key);
        } else if (key == "warmup") {
          cfg.riskmap.warmup = to_int(val, key);
        } else if (key == "exclude_current") {
          cfg.riskmap.exclude_current = to_bool(val, key);
        } else {
          throw ConfigError("config: unknown riskmap key '" + key + "'" + at);
        }
        break;

      case Section::Regression:
        if (key == "lags") {
          cfg.battery.lags = to_int(val, key);
        } else if (key == "horizon") {
          cfg.battery.horizon = to_int(val, key);
        } else if (key == "return_kind") {
          if (val == "log") {
            cfg.battery.return_kind = ReturnKind::Log;
          } else if (val == "simple") {
            cfg.battery.return_kind = ReturnKind::Simple;
          } else {
            throw ConfigError(
                "config: return_kind must be 'log' or 'simple'" + at);
          }
        } else if (key == "thresholds") {
          if (!battery_thresholds_set) {
            cfg.battery.thresholds.clear();
            battery_thresholds_set = true;
          }
          for (const auto& item : split_list(val)) {
            if (item == "mean") {
              cfg.battery.thresholds.push_back(ThresholdSpec::mean());
            } else {
              cfg.battery.thresholds.push_back(
                  ThresholdSpec::pct(to_double(item, key)));
            }
          }
        } else if (key == "taus") {
          if (!battery_taus_set) {
            cfg.battery.taus.clear();
            battery_taus_set = true;
          }
          for (const auto& item : split_list(val))
            cfg.battery.taus.push_back(to_double(item, key));
        } else if (key == "overlap") {
          if (val == "on") {
            cfg.battery.overlap = OverlapMode::On;
          } else if (val == "off") {
            cfg.battery.overlap = OverlapMode::Off;
          } else if (val == "both") {
            cfg.battery.overlap = OverlapMode::Both;
          } else {
            throw ConfigError(
                "config: overlap must be 'on', 'off', or 'both'" + at);
          }
        } else {
          throw ConfigError("config: unknown regression key '" + key + "'" +
                            at);
        }
        break;

      case Section::Benchmarks: {
        auto set_path = [&](std::optional<std::filesystem::path>& slot) {
          slot = resolve(val);
        };
        if (key == "srisk_csv") {
          set_path(cfg.benchmarks.srisk_csv);
        } else if (key == "catfin_csv") {
          set_path(cfg.benchmarks.catfin_csv);
        } else if (key == "ciss_csv") {
          set_path(cfg.benchmarks.ciss_csv);
        } else if (key == "cleveland_csv") {
          set_path(cfg.benchmarks.cleveland_csv);
        } else if (key == "firm_csv") {
          set_path(cfg.benchmarks.firm_csv);
        } else if (key == "dd_panel_csv") {
          set_path(cfg.benchmarks.dd_panel_csv);
        } else if (key == "pdd_csv") {
          set_path(cfg.benchmarks.pdd_csv);
        } else if (key == "var_gpd_csv") {
          set_path(cfg.benchmarks.var_gpd_csv);
        } else if (key == "var_sged_csv") {
          set_path(cfg.benchmarks.var_sged_csv);
        } else if (key == "var_np_csv") {
          set_path(cfg.benchmarks.var_np_csv);
        } else if (key == "k") {
          cfg.benchmarks.k = to_double(val, key);
        } else if (key == "extended_days") {
          cfg.benchmarks.extended_days = to_int(val, key);
        } else {
          throw ConfigError("config: unknown benchmarks key '" + key + "'" +
                            at);
        }
        break;
      }
    }
  }

  if (cfg.response_market.empty() && !cfg.markets.empty())
    cfg.response_market = cfg.markets.front().name;
  return cfg;
}

void EngineConfig::validate() const {
  std::vector<std::string> problems;
  auto complain = [&problems](const std::string& p) {
    problems.push_back(p);
  };

  if (markets.empty()) complain("no [market <name>] sections");
  std::set<std::string> names;
  for (const auto& m : markets) {
    if (!names.insert(m.name).second)
      complain("duplicate market '" + m.name + "'");
    if (m.price_csv.empty()) complain("market '" + m.name + "': no price_csv");
    if (m.iv_csv.empty()) complain("market '" + m.name + "': no iv_csv");
    if (!(m.cap > 0.0))
      complain("market '" + m.name + "': cap must be positive");
  }
  if (!response_market.empty() && !names.count(response_market))
    complain("response_market '" + response_market + "' is not a market");

  if (rv_window < 2) complain("rv_window must be >= 2");
  if (!(annualization > 0.0)) complain("annualization must be positive");
  if (!(rv_scale > 0.0)) complain("rv_scale must be positive");
  if (!(w_iv >= 0.0 && w_iv <= 1.0)) complain("w_iv must lie in [0,1]");

  try {
    riskmap.validate();
  } catch (const Error& e) {
    complain(e.what());
  }

  if (battery.lags < 1) complain("regression lags must be >= 1");
  if (battery.horizon < 1) complain("regression horizon must be >= 1");
  for (double tau : battery.taus) {
    if (!(tau > 0.0 && tau < 1.0))
      complain("tau " + std::to_string(tau) + " outside (0,1)");
  }
  for (const auto& th : battery.thresholds) {
    if (th.kind == ThresholdSpec::Kind::Percentile &&
        !(th.percentile > 0.0 && th.percentile < 1.0))
      complain("threshold percentile " + std::to_string(th.percentile) +
               " outside (0,1)");
  }

  if (!(benchmarks.k >= 0.0 && benchmarks.k < 1.0))
    complain("benchmarks k must lie in [0,1)");
  if (benchmarks.extended_days < 1) complain("extended_days must be >= 1");
  const int var_legs = int(benchmarks.var_gpd_csv.has_value()) +
                       int(benchmarks.var_sged_csv.has_value()) +
                       int(benchmarks.var_np_csv.has_value());
  if (var_legs != 0 && var_legs != 3)
    complain("var_gpd_csv, var_sged_csv, var_np_csv must be given together");
  if (benchmarks.dd_panel_csv.has_value() != benchmarks.pdd_csv.has_value())
    complain("dd_panel_csv and pdd_csv must be given together");

  auto check_exists = [&complain](const std::filesystem::path& p) {
    if (!p.empty() && !std::filesystem::exists(p))
      complain("missing input file: " + p.string());
  };
  for (const auto& m : markets) {
    check_exists(m.price_csv);
    check_exists(m.iv_csv);
  }
  for (const auto& opt :
       {benchmarks.srisk_csv, benchmarks.catfin_csv, benchmarks.ciss_csv,
        benchmarks.cleveland_csv, benchmarks.firm_csv,
        benchmarks.dd_panel_csv, benchmarks.pdd_csv, benchmarks.var_gpd_csv,
        benchmarks.var_sged_csv, benchmarks.var_np_csv}) {
    if (opt) check_exists(*opt);
  }

  if (!problems.empty()) {
    std::string msg = "configuration invalid:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ConfigError(msg);
  }
}

}  // namespace sri
