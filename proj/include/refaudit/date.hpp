#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace refaudit {

// Calendar date at day resolution. Stored as days since 1970-01-01 so that
// differences are plain integer day counts.
class Date {
 public:
  constexpr Date() = default;

  static Date from_days(std::int32_t days_since_epoch) {
    Date d;
    d.days_ = days_since_epoch;
    return d;
  }

  // Throws ValidationError for malformed text or impossible dates.
  static Date parse(std::string_view iso);
  static Date from_ymd(int year, unsigned month, unsigned day);

  std::int32_t days() const noexcept { return days_; }
  int year() const;
  unsigned month() const;
  unsigned day() const;

  // Same month/day shifted by whole years; Feb 29 maps to Feb 28.
  Date minus_years(int years) const;

  std::string to_string() const;

  friend auto operator<=>(const Date&, const Date&) = default;
  friend bool operator==(const Date&, const Date&) = default;

 private:
  std::chrono::year_month_day ymd() const;
  std::int32_t days_ = 0;
};

// Signed difference in days, later - earlier.
inline std::int64_t days_between(Date earlier, Date later) {
  return static_cast<std::int64_t>(later.days()) - earlier.days();
}

}  // namespace refaudit
