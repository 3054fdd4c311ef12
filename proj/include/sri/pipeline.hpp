#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>

#include "sri/config.hpp"

namespace sri {

inline constexpr const char* kEngineVersion = "0.1.0";

// Per-invocation switches layered over the config file.
struct StageOptions {
  bool svg = false;  // emit heat strips alongside riskmap CSVs
  std::optional<int> lags_override;
  std::optional<OverlapMode> overlap_override;
  std::optional<std::filesystem::path> out_override;
};

// Known stage names: indicator, riskmap, stats, benchmarks, evaluate,
// report. Requested stages run in that order with shared intermediate data;
// prerequisites are computed in memory without emitting the other stages'
// files. Every run ends by writing manifest.json (digests, row counts,
// dropped-row logs) atomically into the output directory.
void run_pipeline(const EngineConfig& config,
                  const std::set<std::string>& stages,
                  const StageOptions& opts);

}  // namespace sri
