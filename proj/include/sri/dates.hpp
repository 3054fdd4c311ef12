#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sri {

// Calendar date packed as yyyymmdd. Ordering is plain integer ordering.
// The engine treats dates as ordered labels only; next_day exists for
// calendar generators, not for trading logic.
struct Date {
  std::int32_t ymd = 0;

  constexpr int year() const { return ymd / 10000; }
  constexpr int month() const { return ymd / 100 % 100; }
  constexpr int day() const { return ymd % 100; }

  auto operator<=>(const Date&) const = default;

  // Strict ISO-8601 (YYYY-MM-DD). Returns nullopt on any deviation.
  static std::optional<Date> parse(std::string_view iso);

  // Throws DomainError on an invalid calendar date.
  static Date from_parts(int y, int m, int d);

  std::string to_string() const;
};

bool valid_date(int y, int m, int d);

Date next_day(Date d);

}  // namespace sri
