#include "sri/dates.hpp"

#include <array>
#include <charconv>
#include <cstdio>

#include "sri/errors.hpp"

namespace sri {

namespace {

bool leap_year(int y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

int days_in_month(int y, int m) {
  static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                  31, 31, 30, 31, 30, 31};
  if (m == 2 && leap_year(y)) return 29;
  return lengths[static_cast<std::size_t>(m - 1)];
}

bool parse_int(std::string_view s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

bool valid_date(int y, int m, int d) {
  return y >= 1 && y <= 9999 && m >= 1 && m <= 12 && d >= 1 &&
         d <= days_in_month(y, m);
}

std::optional<Date> Date::parse(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_int(iso.substr(0, 4), y) || !parse_int(iso.substr(5, 2), m) ||
      !parse_int(iso.substr(8, 2), d)) {
    return std::nullopt;
  }
  if (!valid_date(y, m, d)) return std::nullopt;
  return Date{y * 10000 + m * 100 + d};
}

Date Date::from_parts(int y, int m, int d) {
  if (!valid_date(y, m, d)) {
    throw DomainError("invalid calendar date " + std::to_string(y) + "-" +
                      std::to_string(m) + "-" + std::to_string(d));
  }
  return Date{y * 10000 + m * 100 + d};
}

std::string Date::to_string() const {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year(), month(), day());
  return std::string(buf);
}

Date next_day(Date d) {
  int y = d.year(), m = d.month(), dd = d.day() + 1;
  if (dd > days_in_month(y, m)) {
    dd = 1;
    if (++m > 12) {
      m = 1;
      ++y;
    }
  }
  return Date{y * 10000 + m * 100 + dd};
}

}  // namespace sri
