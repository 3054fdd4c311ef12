// Deterministic synthetic-data generator for the shipped test fixture.
// Regenerating rewrites every CSV and the fixture config; the golden
// manifest in tests/golden must be re-recorded afterwards.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace {

constexpr int kDays = 1320;

bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int month_days(int y, int m) {
  static const int d[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && leap(y) ? 29 : d[m - 1];
}

int weekday(int y, int m, int d) {  // Sakamoto, 0 = Sunday
  static const int t[12] = {0, 3, 2, 5, 0, 3, 5, 1, 4, 6, 2, 4};
  if (m < 3) y -= 1;
  return (y + y / 4 - y / 100 + y / 400 + t[m - 1] + d) % 7;
}

std::vector<std::string> business_days(int n) {
  int y = 2016, m = 1, d = 4;  // a Monday
  std::vector<std::string> out;
  while (static_cast<int>(out.size()) < n) {
    const int wd = weekday(y, m, d);
    if (wd != 0 && wd != 6) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, m, d);
      out.emplace_back(buf);
    }
    if (++d > month_days(y, m)) {
      d = 1;
      if (++m > 12) {
        m = 1;
        ++y;
      }
    }
  }
  return out;
}

// Box-Muller over the raw (standardized) mt19937 stream, so the sequence
// does not depend on library-specific distribution implementations.
double normal(std::mt19937& g) {
  const double u1 = (g() + 0.5) * (1.0 / 4294967296.0);
  const double u2 = (g() + 0.5) * (1.0 / 4294967296.0);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

std::string cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  f << content;
  if (!f) {
    std::fprintf(stderr, "cannot write %s\n", p.string().c_str());
    std::exit(1);
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "tests/fixtures";
  std::filesystem::create_directories(dir);
  const std::vector<std::string> dates = business_days(kDays);
  std::mt19937 rng(20240614u);

  const char* names[4] = {"us", "eu", "uk", "ch"};
  const double caps[4] = {35.6, 5.5, 3.7, 1.0};

  for (int m = 0; m < 4; ++m) {
    double price = 100.0 * (1 + m);
    double iv = 18.0 + 2.0 * m;
    std::string ptext = std::string("date,") + names[m] + "\n";
    std::string vtext = std::string("date,iv_") + names[m] + "\n";
    for (int i = 0; i < kDays; ++i) {
      price *= std::exp(0.0002 + 0.01 * normal(rng));
      iv += 0.06 * (20.0 + 2.0 * m - iv) + 1.2 * normal(rng);
      if (iv < 5.0) iv = 5.0;
      if ((i + 47 * m) % 263 == 200) continue;  // market holiday: row absent
      const bool price_gap = (i + 101 * m) % 331 == 7;
      const bool iv_gap = (i + 67 * m) % 293 == 11;
      ptext += dates[i] + "," + (price_gap ? "" : cell(price)) + "\n";
      vtext += dates[i] + "," + (iv_gap ? "" : cell(iv)) + "\n";
    }
    write_file(dir / (std::string(names[m]) + "_price.csv"), ptext);
    write_file(dir / (std::string(names[m]) + "_iv.csv"), vtext);
  }

  // Benchmark level series for the regression battery: positive, mildly
  // mean-reverting, with sparse missing cells.
  {
    double catfin = 1.5, x = 0.0, srisk = 400.0, clev = 4.0;
    std::string a = "date,catfin\n", b = "date,ciss\n", c = "date,srisk\n",
                d = "date,cleveland\n";
    for (int i = 0; i < kDays; ++i) {
      catfin += 0.10 * (1.5 - catfin) + 0.08 * normal(rng);
      if (catfin < 0.2) catfin = 0.2;
      x += 0.05 * (0.0 - x) + 0.30 * normal(rng);
      const double ciss = 1.0 / (1.0 + std::exp(-x));
      srisk += 0.05 * (400.0 - srisk) + 12.0 * normal(rng);
      if (srisk < 50.0) srisk = 50.0;
      clev += 0.08 * (4.0 - clev) + 0.25 * normal(rng);
      if (clev < 0.3) clev = 0.3;
      a += dates[i] + "," + ((i * 13 + 0) % 401 == 5 ? "" : cell(catfin)) +
           "\n";
      b += dates[i] + "," + ((i * 13 + 1) % 401 == 5 ? "" : cell(ciss)) + "\n";
      c += dates[i] + "," + ((i * 13 + 2) % 401 == 5 ? "" : cell(srisk)) +
           "\n";
      d += dates[i] + "," + ((i * 13 + 3) % 401 == 5 ? "" : cell(clev)) +
           "\n";
    }
    write_file(dir / "catfin_level.csv", a);
    write_file(dir / "ciss_level.csv", b);
    write_file(dir / "srisk_level.csv", c);
    write_file(dir / "cleveland_level.csv", d);
  }

  // Bank distance-to-default panel plus the portfolio series. Two depressed
  // stretches are injected: a deep one (spread ~0.05) split by one missing
  // portfolio value, and a short moderate one that stays under the
  // extended-run threshold.
  {
    double bank[4] = {3.5, 4.0, 4.5, 5.0};
    std::string panel = "date,bank_a,bank_b,bank_c,bank_d\n";
    std::string pdd_text = "date,pdd\n";
    for (int i = 0; i < kDays; ++i) {
      double sum = 0.0;
      int n_present = 0;
      panel += dates[i];
      for (int k = 0; k < 4; ++k) {
        bank[k] += 0.10 * (3.5 + 0.5 * k - bank[k]) + 0.30 * normal(rng);
        if (bank[k] < 0.2) bank[k] = 0.2;
        const bool gap = (i + 31 * k) % 263 == 17;
        panel += ",";
        if (!gap) {
          panel += cell(bank[k]);
          sum += bank[k];
          ++n_present;
        }
      }
      panel += "\n";
      double target = 1.0 + 0.5 * std::fabs(normal(rng));
      if (i >= 600 && i < 640) target = 0.05;
      if (i >= 900 && i < 915) target = 0.30;
      const double add = n_present > 0 ? sum / n_present : 4.0;
      double pdd = add - target;
      if (pdd < 0.05) pdd = 0.05;
      pdd_text += dates[i] + "," + (i == 610 ? "" : cell(pdd)) + "\n";
    }
    write_file(dir / "dd_panel.csv", panel);
    write_file(dir / "pdd.csv", pdd_text);
  }

  // Three tail-risk level series entering the fixed-weight combination.
  {
    double legs[3] = {0.05, 0.05, 0.05};
    std::string text[3] = {"date,var_gpd\n", "date,var_sged\n",
                           "date,var_np\n"};
    for (int i = 0; i < kDays; ++i) {
      for (int leg = 0; leg < 3; ++leg) {
        legs[leg] += 0.20 * (0.05 - legs[leg]) + 0.01 * normal(rng);
        if (legs[leg] < 0.005) legs[leg] = 0.005;
        const bool gap = (i + 7 * leg) % 389 == 100;
        text[leg] += dates[i] + "," + (gap ? "" : cell(legs[leg])) + "\n";
      }
    }
    write_file(dir / "var_gpd.csv", text[0]);
    write_file(dir / "var_sged.csv", text[1]);
    write_file(dir / "var_np.csv", text[2]);
  }

  write_file(dir / "firms.csv",
             "name,W,D,lrmes\n"
             "alpha,100,900,0.6\n"
             "beta,250,1800,0.45\n"
             "gamma,80,300,0.3\n"
             "delta,500,2200,0.55\n"
             "epsilon,60,120,0.2\n"
             "zeta,150,1400,0.5\n");

  std::string cfg;
  cfg += "# synthetic fixture configuration\n";
  cfg += "output_dir = out\n";
  cfg += "rv_window = 21\n";
  cfg += "annualization = 252\n";
  cfg += "rv_scale = 100\n";
  cfg += "w_iv = 0.5\n";
  cfg += "response_market = us\n\n";
  for (int m = 0; m < 4; ++m) {
    cfg += std::string("[market ") + names[m] + "]\n";
    cfg += std::string("price_csv = ") + names[m] + "_price.csv\n";
    cfg += std::string("iv_csv = ") + names[m] + "_iv.csv\n";
    cfg += "cap = " + cell(caps[m]) + "\n\n";
  }
  cfg +=
      "[riskmap]\n"
      "breakpoints = 0.25, 0.5, 0.75\n"
      "window = expanding\n"
      "warmup = 252\n"
      "exclude_current = false\n\n"
      "[regression]\n"
      "lags = 5\n"
      "horizon = 5\n"
      "return_kind = simple\n"
      "thresholds = mean, 0.25, 0.10, 0.05, 0.025, 0.01\n"
      "taus = 0.5, 0.25, 0.1, 0.05, 0.025, 0.01\n"
      "overlap = both\n\n"
      "[benchmarks]\n"
      "catfin_csv = catfin_level.csv\n"
      "ciss_csv = ciss_level.csv\n"
      "srisk_csv = srisk_level.csv\n"
      "cleveland_csv = cleveland_level.csv\n"
      "firm_csv = firms.csv\n"
      "dd_panel_csv = dd_panel.csv\n"
      "pdd_csv = pdd.csv\n"
      "var_gpd_csv = var_gpd.csv\n"
      "var_sged_csv = var_sged.csv\n"
      "var_np_csv = var_np.csv\n"
      "k = 0.08\n"
      "extended_days = 20\n";
  write_file(dir / "engine.cfg", cfg);

  std::printf("fixture written to %s\n", dir.string().c_str());
  return 0;
}
