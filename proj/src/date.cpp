#include "newsattn/date.hpp"

#include <charconv>

#include <fmt/format.h>

#include "newsattn/error.hpp"

namespace newsattn {

namespace {

int parse_digits(std::string_view text, std::string_view whole) {
  int value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw ParseError(fmt::format("invalid date '{}'", whole));
  }
  std::from_chars(text.data(), text.data() + text.size(), value);
  return value;
}

Day make_day(int y, int m, int d, std::string_view whole) {
  using namespace std::chrono;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) throw ParseError(fmt::format("invalid date '{}'", whole));
  return sys_days{ymd};
}

}  // namespace

Day Month::first_day() const {
  using namespace std::chrono;
  return sys_days{year_month_day{std::chrono::year{year}, std::chrono::month{month}, day{1}}};
}

unsigned Month::length() const {
  using namespace std::chrono;
  year_month_day_last last{std::chrono::year{year}, month_day_last{std::chrono::month{month}}};
  return static_cast<unsigned>(last.day());
}

Day parse_day(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw ParseError(fmt::format("invalid date '{}'", text));
  }
  return make_day(parse_digits(text.substr(0, 4), text), parse_digits(text.substr(5, 2), text),
                  parse_digits(text.substr(8, 2), text), text);
}

Day parse_compact_day(std::string_view text) {
  if (text.size() != 8) throw ParseError(fmt::format("invalid date '{}'", text));
  return make_day(parse_digits(text.substr(0, 4), text), parse_digits(text.substr(4, 2), text),
                  parse_digits(text.substr(6, 2), text), text);
}

std::string format_day(Day day) {
  std::chrono::year_month_day ymd{day};
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

std::string format_compact_day(Day day) {
  std::chrono::year_month_day ymd{day};
  return fmt::format("{:04d}{:02d}{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

Month parse_month(std::string_view text) {
  if (text.size() != 7 || text[4] != '-') throw ParseError(fmt::format("invalid month '{}'", text));
  Month m{parse_digits(text.substr(0, 4), text),
          static_cast<unsigned>(parse_digits(text.substr(5, 2), text))};
  if (m.month < 1 || m.month > 12) throw ParseError(fmt::format("invalid month '{}'", text));
  return m;
}

std::string format_month(Month month) { return fmt::format("{:04d}-{:02d}", month.year, month.month); }

Month month_of(Day day) {
  std::chrono::year_month_day ymd{day};
  return Month{static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month())};
}

}  // namespace newsattn
