#pragma once

// Independent statistics for the trend rule, and generators that build
// sequences meeting each category's preconditions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace refaudit::oracle {

struct TrendStats {
  double slope = 0;
  double rho = 0;
  double cv = 0;
  double m1 = 0;
  double m3 = 0;
  double slope_first = 0;
  bool strictly_decreasing = true;
};

inline double ols_slope(const std::vector<double>& y) {
  const double n = static_cast<double>(y.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double x = static_cast<double>(i);
    sx += x;
    sy += y[i];
    sxx += x * x;
    sxy += x * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den == 0 ? 0 : (n * sxy - sx * sy) / den;
}

// Spearman as Pearson over tie-averaged ranks, computed by counting.
inline double spearman_vs_index(const std::vector<double>& y) {
  const std::size_t n = y.size();
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    double less = 0, equal = 0;
    for (std::size_t j = 0; j < n; ++j) {
      less += y[j] < y[i];
      equal += y[j] == y[i];
    }
    r[i] = less + (equal + 1) / 2.0;
  }
  const double mx = (n - 1) / 2.0;
  double my = 0;
  for (double v : r) my += v;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (i - mx) * (r[i] - my);
    sxx += (i - mx) * (i - mx);
    syy += (r[i] - my) * (r[i] - my);
  }
  return syy == 0 ? 0 : sxy / std::sqrt(sxx * syy);
}

inline TrendStats trend_stats(const std::vector<double>& y) {
  TrendStats s;
  const std::size_t n = y.size();
  s.slope = ols_slope(y);
  s.rho = spearman_vs_index(y);
  double mean = 0;
  for (double v : y) mean += v;
  mean /= n;
  const double xbar = (n - 1) / 2.0;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - mean - s.slope * (i - xbar);
    ss += e * e;
  }
  s.cv = mean > 0 ? std::sqrt(ss / n) / mean : 0;
  const std::size_t t = std::max<std::size_t>(2, n / 3);
  for (std::size_t i = 0; i < t; ++i) {
    s.m1 += y[i] / t;
    s.m3 += y[n - t + i] / t;
  }
  s.slope_first = ols_slope(std::vector<double>(y.begin(), y.begin() + t));
  for (std::size_t i = 1; i < n; ++i) s.strictly_decreasing = s.strictly_decreasing && y[i] < y[i - 1];
  return s;
}

// Default thresholds of the classifier, restated for the generators.
struct Thresholds {
  double rank = -0.8;
  double good = 0.5;
  double flat = 0.25;
  double fluct = 0.4;
};

inline bool is_step_down(const TrendStats& s, const Thresholds& t = {}) {
  return s.m1 > (1 + t.good) * s.m3 && std::abs(s.slope_first) <= t.flat * std::abs(s.slope);
}

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
inline std::size_t length(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Strictly decreasing, positive.
inline std::vector<double> monotone_decline(Rng& rng) {
  const auto n = length(rng, 5, 30);
  std::vector<double> y(n);
  double v = uniform(rng, 50, 200);
  for (auto& x : y) {
    x = v;
    v -= uniform(rng, 0.5, 5.0);
    v = std::max(v, x * 0.5);
  }
  return y;
}

// A high plateau with a small bump, then a low tail.
inline std::vector<double> step_down(Rng& rng) {
  const Thresholds t;
  while (true) {
    const auto n = length(rng, 6, 30);
    const auto plateau = std::max<std::size_t>(std::max<std::size_t>(2, n / 3) + 1, n / 2);
    const double high = uniform(rng, 40, 120);
    const double low = high * uniform(rng, 0.05, 0.3);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = (i < plateau ? high : low) * (1 + uniform(rng, -0.03, 0.03));
    }
    y[1] = y[0] * 1.02;  // not strictly decreasing
    const auto s = trend_stats(y);
    if (s.slope < 0 && !s.strictly_decreasing && is_step_down(s, t)) return y;
  }
}

// Downward drift under large alternating swings.
inline std::vector<double> noisy_decline(Rng& rng) {
  const Thresholds t;
  while (true) {
    const auto n = length(rng, 8, 30);
    const double base = uniform(rng, 20, 80);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double trend = base * (1.0 - 0.35 * static_cast<double>(i) / static_cast<double>(n - 1));
      const double swing = (i % 2 ? -1.0 : 1.0) * uniform(rng, 0.5, 0.8);
      y[i] = trend * (1 + swing);
    }
    const auto s = trend_stats(y);
    if (s.slope < 0 && !s.strictly_decreasing && !is_step_down(s, t) && s.rho > t.rank && s.cv > t.fluct) return y;
  }
}

// Non-negative slope: noisy upward drift.
inline std::vector<double> increasing(Rng& rng) {
  while (true) {
    const auto n = length(rng, 5, 30);
    std::vector<double> y(n);
    double v = uniform(rng, 5, 50);
    for (auto& x : y) {
      x = v;
      v = std::max(0.0, v + uniform(rng, -1.0, 4.0));
    }
    if (trend_stats(y).slope >= 0) return y;
  }
}

}  // namespace refaudit::oracle
