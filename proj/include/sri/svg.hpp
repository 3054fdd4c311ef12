#pragma once

#include <string>
#include <vector>

#include "sri/riskmap.hpp"
#include "sri/time_series.hpp"

namespace sri::svg {

// Deterministic multi-series line chart over the trading-day index.
// Polylines break at missing values; byte-stable across runs on identical
// inputs.
std::string line_chart(const std::vector<TimeSeries>& series,
                       const std::string& title);

// One colored heat strip per risk map (rows share the x axis). Unclassified
// spans render gray; a map with zero classified dates gets a warmup
// annotation instead of color.
std::string heat_strips(const std::vector<RiskMap>& maps,
                        const std::vector<std::string>& labels,
                        const std::string& title);

}  // namespace sri::svg
