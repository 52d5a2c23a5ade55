#pragma once

#include <optional>
#include <span>
#include <vector>

namespace refaudit::stats {

double mean(std::span<const double> values);
// Even-length input averages the two central values. Empty input is a
// PreconditionError.
double median(std::vector<double> values);
double population_stddev(std::span<const double> values);

// 1-based ranks; ties share their average rank.
std::vector<double> average_ranks(std::span<const double> values);

double pearson(std::span<const double> x, std::span<const double> y);
// Pearson correlation of average ranks. 0 when either side is constant.
double spearman(std::span<const double> x, std::span<const double> y);

// Least-squares slope of values against their index 0..n-1. 0 below two points.
double index_slope(std::span<const double> values);

}  // namespace refaudit::stats
