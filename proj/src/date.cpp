#include "refaudit/date.hpp"

#include <charconv>
#include <cstdio>

#include "refaudit/error.hpp"

namespace refaudit {

namespace {

int parse_digits(std::string_view text, std::string_view whole) {
  int value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw ValidationError("malformed date '" + std::string(whole) + "', expected YYYY-MM-DD");
    }
  }
  std::from_chars(text.data(), text.data() + text.size(), value);
  return value;
}

}  // namespace

Date Date::parse(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') {
    throw ValidationError("malformed date '" + std::string(iso) + "', expected YYYY-MM-DD");
  }
  const int y = parse_digits(iso.substr(0, 4), iso);
  const int m = parse_digits(iso.substr(5, 2), iso);
  const int d = parse_digits(iso.substr(8, 2), iso);
  return from_ymd(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
}

Date Date::from_ymd(int year, unsigned month, unsigned day) {
  const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                        std::chrono::day{day}};
  if (!ymd.ok()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year, month, day);
    throw ValidationError(std::string("invalid calendar date ") + buf);
  }
  return from_days(static_cast<std::int32_t>(std::chrono::sys_days{ymd}.time_since_epoch().count()));
}

std::chrono::year_month_day Date::ymd() const {
  return std::chrono::year_month_day{std::chrono::sys_days{std::chrono::days{days_}}};
}

int Date::year() const { return static_cast<int>(ymd().year()); }
unsigned Date::month() const { return static_cast<unsigned>(ymd().month()); }
unsigned Date::day() const { return static_cast<unsigned>(ymd().day()); }

Date Date::minus_years(int years) const {
  auto shifted = ymd() - std::chrono::years{years};
  if (!shifted.ok()) {
    shifted = shifted.year() / shifted.month() / std::chrono::last;
  }
  return from_days(static_cast<std::int32_t>(std::chrono::sys_days{shifted}.time_since_epoch().count()));
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year(), month(), day());
  return buf;
}

}  // namespace refaudit
