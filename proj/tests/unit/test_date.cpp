#include <doctest.h>

#include "refaudit/date.hpp"
#include "refaudit/error.hpp"

using refaudit::Date;

TEST_CASE("ISO dates round-trip") {
  for (const char* text : {"1970-01-01", "1997-03-15", "2000-02-29", "2012-12-31"}) {
    CHECK(Date::parse(text).to_string() == text);
  }
  CHECK(Date::parse("1970-01-02").days() == 1);
  const auto d = Date::parse("2010-07-04");
  CHECK(d.year() == 2010);
  CHECK(d.month() == 7u);
  CHECK(d.day() == 4u);
}

TEST_CASE("malformed or impossible dates are rejected") {
  for (const char* text : {"", "2010-1-01", "2010-02-30", "2011-02-29", "2010/01/01", "2010-13-01", "20100101x"}) {
    CHECK_THROWS_AS(Date::parse(text), refaudit::ValidationError);
  }
}

TEST_CASE("day differences follow the calendar") {
  CHECK(refaudit::days_between(Date::parse("2010-01-01"), Date::parse("2010-01-11")) == 10);
  CHECK(refaudit::days_between(Date::parse("2010-01-11"), Date::parse("2010-02-10")) == 30);
  CHECK(refaudit::days_between(Date::parse("2012-02-28"), Date::parse("2012-03-01")) == 2);
}

TEST_CASE("minus_years clips leap days") {
  CHECK(Date::parse("2012-06-15").minus_years(2).to_string() == "2010-06-15");
  CHECK(Date::parse("2012-02-29").minus_years(1).to_string() == "2011-02-28");
  CHECK(Date::parse("2012-02-29").minus_years(4).to_string() == "2008-02-29");
}
