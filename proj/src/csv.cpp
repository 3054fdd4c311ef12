#include "sri/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "sri/errors.hpp"

namespace sri::csv {

std::string fmt_double(double v) {
  if (is_missing(v)) return "";
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v,
                           std::chars_format::general, 10);
  return std::string(buf, res.ptr);
}

std::string file_digest(const std::filesystem::path& path) {
  const std::string bytes = read_text(path);
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path.string());
  return ss.str();
}

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec)
      throw IoError("cannot create directory " +
                    path.parent_path().string() + ": " + ec.message());
  }
  const std::filesystem::path tmp = path.string() + ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out.good()) throw IoError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw IoError("cannot move " + tmp.string() + " into place: " +
                  ec.message());
}

namespace {

// Collects per-row problems and raises them as one IngestError.
class ErrorSink {
 public:
  explicit ErrorSink(std::string file) : file_(std::move(file)) {}

  void add(std::size_t line_no, const std::string& what) {
    ++count_;
    if (count_ <= 20) {
      lines_ += "\n  line " + std::to_string(line_no) + ": " + what;
    }
  }

  void raise_if_any() const {
    if (count_ == 0) return;
    std::string msg = file_ + ": " + std::to_string(count_) +
                      " malformed row(s)" + lines_;
    if (count_ > 20) msg += "\n  ... and " + std::to_string(count_ - 20) +
                            " more";
    throw IngestError(msg);
  }

  bool any() const { return count_ > 0; }

 private:
  std::string file_;
  std::string lines_;
  std::size_t count_ = 0;
};

std::string strip(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r'))
    --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(strip(std::string_view(line).substr(start)));
      break;
    }
    cells.push_back(
        strip(std::string_view(line).substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

// Non-empty numeric cell; returns false on garbage.
bool parse_cell(const std::string& cell, double& out) {
  if (cell.empty()) {
    out = kMissing;
    return true;
  }
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (*first == '+') ++first;  // from_chars rejects a leading plus
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

struct RawTable {
  std::vector<std::string> header;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
};

RawTable read_rows(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  RawTable t;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    const std::string line = text.substr(
        start, nl == std::string::npos ? std::string::npos : nl - start);
    start = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (strip(line).empty()) continue;
    if (t.header.empty()) {
      t.header = split_row(line);
    } else {
      t.rows.emplace_back(line_no, split_row(line));
    }
  }
  if (t.header.empty()) throw IngestError(path.string() + ": empty file");
  return t;
}

// Shared by series/panel readers: date-indexed numeric columns.
struct DatedColumns {
  std::vector<std::string> names;  // value-column names
  std::vector<Date> dates;
  std::vector<std::vector<double>> columns;
};

DatedColumns read_dated(const std::filesystem::path& path,
                        std::size_t expect_cols /* 0 = any */) {
  RawTable t = read_rows(path);
  ErrorSink errs(path.string());

  if (t.header.front() != "date") {
    throw IngestError(path.string() + ": header must start with 'date', got '" +
                      t.header.front() + "'");
  }
  if (t.header.size() < 2) {
    throw IngestError(path.string() + ": no value columns in header");
  }
  if (expect_cols != 0 && t.header.size() != expect_cols) {
    throw IngestError(path.string() + ": expected " +
                      std::to_string(expect_cols) + " columns, header has " +
                      std::to_string(t.header.size()));
  }

  DatedColumns out;
  out.names.assign(t.header.begin() + 1, t.header.end());
  out.columns.resize(out.names.size());

  for (const auto& [line_no, cells] : t.rows) {
    if (cells.size() != t.header.size()) {
      errs.add(line_no, "expected " + std::to_string(t.header.size()) +
                            " cells, got " + std::to_string(cells.size()));
      continue;
    }
    const auto d = Date::parse(cells[0]);
    if (!d) {
      errs.add(line_no, "unparseable date '" + cells[0] + "'");
      continue;
    }
    if (!out.dates.empty() && !(out.dates.back() < *d)) {
      errs.add(line_no, out.dates.back() == *d
                            ? "duplicate date " + d->to_string()
                            : "dates out of order at " + d->to_string());
      continue;
    }
    std::vector<double> row(out.names.size());
    bool ok = true;
    for (std::size_t j = 0; j < out.names.size(); ++j) {
      if (!parse_cell(cells[j + 1], row[j])) {
        errs.add(line_no, "non-numeric cell '" + cells[j + 1] +
                              "' in column '" + out.names[j] + "'");
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    out.dates.push_back(*d);
    for (std::size_t j = 0; j < out.names.size(); ++j)
      out.columns[j].push_back(row[j]);
  }
  errs.raise_if_any();
  if (out.dates.empty()) throw IngestError(path.string() + ": no data rows");
  return out;
}

}  // namespace

TimeSeries read_series(const std::filesystem::path& path) {
  DatedColumns d = read_dated(path, 2);
  Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(
      d.columns[0].data(), static_cast<Eigen::Index>(d.columns[0].size()));
  return TimeSeries(d.names[0], std::move(d.dates), std::move(v));
}

std::vector<TimeSeries> read_panel(const std::filesystem::path& path) {
  DatedColumns d = read_dated(path, 0);
  std::vector<TimeSeries> out;
  out.reserve(d.names.size());
  for (std::size_t j = 0; j < d.names.size(); ++j) {
    Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(
        d.columns[j].data(), static_cast<Eigen::Index>(d.columns[j].size()));
    out.emplace_back(d.names[j], d.dates, std::move(v));
  }
  return out;
}

std::vector<FirmSnapshot> read_firms(const std::filesystem::path& path,
                                     double k) {
  RawTable t = read_rows(path);
  ErrorSink errs(path.string());
  const std::vector<std::string> want = {"name", "W", "D", "lrmes"};
  if (t.header != want) {
    throw IngestError(path.string() + ": header must be 'name,W,D,lrmes'");
  }
  std::vector<FirmSnapshot> firms;
  for (const auto& [line_no, cells] : t.rows) {
    if (cells.size() != 4) {
      errs.add(line_no, "expected 4 cells, got " +
                            std::to_string(cells.size()));
      continue;
    }
    FirmSnapshot f;
    f.name = cells[0];
    f.k = k;
    double* fields[3] = {&f.equity, &f.debt, &f.lrmes};
    bool ok = !f.name.empty();
    if (!ok) errs.add(line_no, "empty firm name");
    for (int j = 0; ok && j < 3; ++j) {
      if (!parse_cell(cells[static_cast<std::size_t>(j) + 1], *fields[j]) ||
          is_missing(*fields[j])) {
        errs.add(line_no, "non-numeric cell '" +
                              cells[static_cast<std::size_t>(j) + 1] + "'");
        ok = false;
      }
    }
    if (!ok) continue;
    try {
      f.validate();
    } catch (const Error& e) {
      errs.add(line_no, e.what());
      continue;
    }
    firms.push_back(std::move(f));
  }
  errs.raise_if_any();
  if (firms.empty()) throw IngestError(path.string() + ": no firms");
  return firms;
}

OptionChainSlice read_chain(const std::filesystem::path& path,
                            double expiry_fraction, double risk_free,
                            double forward) {
  RawTable t = read_rows(path);
  ErrorSink errs(path.string());
  const std::vector<std::string> want = {"strike", "quote"};
  if (t.header != want) {
    throw IngestError(path.string() + ": header must be 'strike,quote'");
  }
  std::vector<double> strikes, quotes;
  for (const auto& [line_no, cells] : t.rows) {
    if (cells.size() != 2) {
      errs.add(line_no, "expected 2 cells, got " +
                            std::to_string(cells.size()));
      continue;
    }
    double s, q;
    if (!parse_cell(cells[0], s) || is_missing(s)) {
      errs.add(line_no, "non-numeric strike '" + cells[0] + "'");
      continue;
    }
    if (!parse_cell(cells[1], q) || is_missing(q)) {
      errs.add(line_no, "non-numeric quote '" + cells[1] + "'");
      continue;
    }
    strikes.push_back(s);
    quotes.push_back(q);
  }
  errs.raise_if_any();
  try {
    return OptionChainSlice::make(expiry_fraction, risk_free, forward,
                                  std::move(strikes), std::move(quotes));
  } catch (const DomainError& e) {
    throw IngestError(path.string() + ": " + e.what());
  }
}

void write_series_panel(const std::filesystem::path& path,
                        const std::vector<TimeSeries>& columns) {
  if (columns.empty()) throw ConfigError("write_series_panel: no columns");
  for (const auto& s : columns) {
    if (!s.same_dates(columns.front()))
      throw AlignmentError("write_series_panel: '" + s.name() +
                           "' is not on the shared date index");
  }
  std::string out = "date";
  for (const auto& s : columns) out += "," + s.name();
  out += "\n";
  for (Eigen::Index t = 0; t < columns.front().size(); ++t) {
    out += columns.front().date(t).to_string();
    for (const auto& s : columns) out += "," + fmt_double(s.value(t));
    out += "\n";
  }
  write_text_atomic(path, out);
}

void write_table(const std::filesystem::path& path,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (std::size_t j = 0; j < header.size(); ++j)
    out += (j ? "," : "") + header[j];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j)
      out += (j ? "," : "") + row[j];
    out += "\n";
  }
  write_text_atomic(path, out);
}

}  // namespace sri::csv
