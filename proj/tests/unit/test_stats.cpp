#include <doctest.h>

#include <vector>

#include "refaudit/error.hpp"
#include "refaudit/stats.hpp"

using namespace refaudit;
using V = std::vector<double>;

TEST_CASE("median") {
  CHECK(stats::median({4, 10}) == 7.0);
  CHECK(stats::median({3, 1, 2}) == 2.0);
  CHECK(stats::median({5}) == 5.0);
  CHECK_THROWS_AS(stats::median({}), PreconditionError);
}

TEST_CASE("average ranks share ties") {
  CHECK(stats::average_ranks(V{10, 20, 20, 5}) == V{2, 3.5, 3.5, 1});
}

TEST_CASE("correlations") {
  const V x{1, 2, 3, 4, 5};
  CHECK(stats::spearman(x, V{2, 4, 8, 16, 32}) == doctest::Approx(1.0));
  CHECK(stats::spearman(x, V{5, 4, 3, 2, 1}) == doctest::Approx(-1.0));
  CHECK(stats::spearman(x, V{3, 3, 3, 3, 3}) == 0.0);
  CHECK(stats::pearson(x, V{2, 4, 6, 8, 10}) == doctest::Approx(1.0));
}

TEST_CASE("index slope") {
  CHECK(stats::index_slope(V{1, 3, 5, 7}) == doctest::Approx(2.0));
  CHECK(stats::index_slope(V{4}) == 0.0);
  CHECK(stats::population_stddev(V{2, 4, 4, 4, 5, 5, 7, 9}) == doctest::Approx(2.0));
}
