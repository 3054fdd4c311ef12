#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sri/benchmarks.hpp"
#include "sri/time_series.hpp"
#include "sri/volatility.hpp"

namespace sri::csv {

// Canonical floating-point emission: shortest form at 10 significant digits,
// locale-independent; missing renders as the empty cell.
std::string fmt_double(double v);

// FNV-1a 64-bit digest of a file's bytes, as 16 hex characters.
std::string file_digest(const std::filesystem::path& path);

// Writes content to `<path>.partial` and renames over `path` on success, so
// readers never observe a torn file. Creates parent directories.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

std::string read_text(const std::filesystem::path& path);

// --- readers -------------------------------------------------------------
// All readers are fail-fast per file: malformed rows (bad date, duplicate or
// out-of-order date, non-numeric cell, column-count drift) are collected and
// raised together as one IngestError listing up to 20 offending lines.
// Empty numeric cells are missing values, not errors.

// `date,<name>` two-column file; the series takes its name from the header.
TimeSeries read_series(const std::filesystem::path& path);

// Wide panel `date,col1,...,colN`; returns one series per value column.
std::vector<TimeSeries> read_panel(const std::filesystem::path& path);

// Firm table `name,W,D,lrmes`; `k` applies to every row (per-file override).
std::vector<FirmSnapshot> read_firms(const std::filesystem::path& path,
                                     double k);

// Option chain `strike,quote` plus slice metadata from flags/config.
OptionChainSlice read_chain(const std::filesystem::path& path,
                            double expiry_fraction, double risk_free,
                            double forward);

// --- writers -------------------------------------------------------------

// Wide CSV of series sharing one date index (AlignmentError otherwise):
// `date,<name1>,...`.
void write_series_panel(const std::filesystem::path& path,
                        const std::vector<TimeSeries>& columns);

// Generic table: header plus pre-formatted string cells.
void write_table(const std::filesystem::path& path,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows);

}  // namespace sri::csv
