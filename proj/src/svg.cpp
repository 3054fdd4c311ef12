#include "sri/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "sri/errors.hpp"

namespace sri::svg {

namespace {

constexpr int kWidth = 960;
constexpr int kPlotLeft = 70;
constexpr int kPlotRight = 930;
constexpr int kTitleBand = 40;

constexpr const char* kLinePalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                        "#9467bd", "#ff7f0e", "#8c564b",
                                        "#17becf", "#7f7f7f"};

std::string coord(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v,
                           std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string text_el(double x, double y, const std::string& body,
                    const char* extra = "") {
  return "<text x=\"" + coord(x) + "\" y=\"" + coord(y) +
         "\" font-family=\"monospace\" font-size=\"12\"" + extra + ">" +
         escape(body) + "</text>\n";
}

std::string open_doc(int height, const std::string& title) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(kWidth) + "\" height=\"" + std::to_string(height) +
         "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " +
         std::to_string(height) + "\">\n<rect width=\"100%\" height=\"100%\" " +
         "fill=\"#ffffff\"/>\n" +
         text_el(kPlotLeft, 24, title, " font-size=\"15\"");
}

}  // namespace

std::string line_chart(const std::vector<TimeSeries>& series,
                       const std::string& title) {
  if (series.empty()) throw ConfigError("line_chart: no series");
  for (const auto& s : series) {
    if (!s.same_dates(series.front()))
      throw AlignmentError("line_chart: '" + s.name() +
                           "' is not on the shared date index");
  }

  const int plot_height = 300;
  const int height = kTitleBand + plot_height + 50;
  const double top = kTitleBand;
  const double bottom = kTitleBand + plot_height;

  double lo = 0.0, hi = 0.0;
  bool seen = false;
  for (const auto& s : series) {
    for (Eigen::Index t = 0; t < s.size(); ++t) {
      const double v = s.value(t);
      if (is_missing(v)) continue;
      lo = seen ? std::min(lo, v) : v;
      hi = seen ? std::max(hi, v) : v;
      seen = true;
    }
  }
  if (!seen) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }

  const Eigen::Index n = series.front().size();
  const double xspan = kPlotRight - kPlotLeft;
  auto xpos = [&](Eigen::Index t) {
    return n > 1 ? kPlotLeft + xspan * static_cast<double>(t) /
                                    static_cast<double>(n - 1)
                 : (kPlotLeft + kPlotRight) / 2.0;
  };
  auto ypos = [&](double v) {
    return bottom - (v - lo) / (hi - lo) * plot_height;
  };

  std::string out = open_doc(height, title);
  out += "<rect x=\"" + coord(kPlotLeft) + "\" y=\"" + coord(top) +
         "\" width=\"" + coord(xspan) + "\" height=\"" +
         coord(plot_height) + "\" fill=\"none\" stroke=\"#888888\"/>\n";
  out += text_el(4, top + 10, coord(hi));
  out += text_el(4, bottom, coord(lo));
  if (n > 0) {
    out += text_el(kPlotLeft, bottom + 16, series.front().date(0).to_string());
    out += text_el(kPlotRight - 80, bottom + 16,
                   series.front().date(n - 1).to_string());
  }

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kLinePalette[i % std::size(kLinePalette)];
    out += text_el(kPlotLeft + 140.0 * static_cast<double>(i), bottom + 34,
                   series[i].name(),
                   (std::string(" fill=\"") + color + "\"").c_str());
    std::string points;
    auto flush = [&]() {
      if (points.find(' ') != std::string::npos) {
        out += "<polyline fill=\"none\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"1\" points=\"" + points + "\"/>\n";
      }
      points.clear();
    };
    for (Eigen::Index t = 0; t < n; ++t) {
      const double v = series[i].value(t);
      if (is_missing(v)) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += coord(xpos(t)) + "," + coord(ypos(v));
    }
    flush();
  }
  out += "</svg>\n";
  return out;
}

std::string heat_strips(const std::vector<RiskMap>& maps,
                        const std::vector<std::string>& labels,
                        const std::string& title) {
  if (maps.empty()) throw ConfigError("heat_strips: no maps");
  if (labels.size() != maps.size())
    throw ConfigError("heat_strips: label count mismatch");

  const int strip_height = 26;
  const int gap = 8;
  const int height = kTitleBand +
                     static_cast<int>(maps.size()) * (strip_height + gap) + 20;
  std::string out = open_doc(height, title);

  const double xspan = kPlotRight - kPlotLeft;
  for (std::size_t m = 0; m < maps.size(); ++m) {
    const RiskMap& map = maps[m];
    const double y0 = kTitleBand + static_cast<double>(m) *
                                       (strip_height + gap);
    out += text_el(4, y0 + strip_height / 2.0 + 4, labels[m]);

    const Eigen::Index n = map.indicator.size();
    if (map.n_classified == 0 || n == 0) {
      out += text_el(kPlotLeft, y0 + strip_height / 2.0 + 4,
                     "warmup only: no classified dates",
                     " fill=\"#888888\"");
      continue;
    }
    auto xpos = [&](Eigen::Index t) {
      return kPlotLeft + xspan * static_cast<double>(t) /
                             static_cast<double>(n);
    };
    // One rect per run of equal buckets keeps the file small and stable.
    Eigen::Index run_start = 0;
    for (Eigen::Index t = 1; t <= n; ++t) {
      const bool boundary =
          t == n || map.bucket[static_cast<std::size_t>(t)] !=
                        map.bucket[static_cast<std::size_t>(run_start)];
      if (!boundary) continue;
      const int b = map.bucket[static_cast<std::size_t>(run_start)];
      out += "<rect x=\"" + coord(xpos(run_start)) + "\" y=\"" + coord(y0) +
             "\" width=\"" + coord(xpos(t) - xpos(run_start)) +
             "\" height=\"" + std::to_string(strip_height) + "\" fill=\"" +
             bucket_hex(b, map.policy.n_buckets()) + "\"/>\n";
      run_start = t;
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace sri::svg
