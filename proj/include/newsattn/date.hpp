#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace newsattn {

using Day = std::chrono::sys_days;

/// Calendar month, ordered chronologically.
struct Month {
  int year = 1970;
  unsigned month = 1;

  auto operator<=>(const Month&) const = default;

  Month next() const { return month == 12 ? Month{year + 1, 1} : Month{year, month + 1}; }
  Day first_day() const;
  unsigned length() const;
};

/// Parses "YYYY-MM-DD"; throws ParseError on anything else.
Day parse_day(std::string_view text);
/// Parses "YYYYMMDD".
Day parse_compact_day(std::string_view text);
std::string format_day(Day day);
std::string format_compact_day(Day day);

/// Parses "YYYY-MM".
Month parse_month(std::string_view text);
std::string format_month(Month month);
Month month_of(Day day);

inline Day add_days(Day day, long n) { return day + std::chrono::days{n}; }
inline long days_between(Day from, Day to) { return (to - from).count(); }

}  // namespace newsattn
