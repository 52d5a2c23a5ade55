#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "refaudit/ledger.hpp"

namespace refaudit {

enum class TrendCategory { ConstantDecline, GoodThenDecline, FluctuatingDecline, NoDecline };

std::string_view to_string(TrendCategory category);

struct CitationSequence {
  std::string reviewer_id;
  std::vector<double> values;  // windowed citations in acceptance order
};

struct TrendParams {
  std::size_t min_length = 5;
  double rank_threshold = -0.8;     // Spearman at or below this reads as steady decline
  double good_ratio = 0.5;          // first-third mean must exceed (1 + good_ratio) x last-third mean
  double flat_fraction = 0.25;      // |first-third slope| <= flat_fraction x |overall slope|
  double fluctuation_cv = 0.4;      // residual CV above this reads as fluctuating
};

struct TrendStatistics {
  double slope = 0.0;         // least-squares slope over index
  double spearman = 0.0;      // rank correlation of value with index
  double residual_cv = 0.0;   // population sd of detrended residuals / mean
  double first_mean = 0.0;    // mean of the first third
  double last_mean = 0.0;     // mean of the last third
  double first_slope = 0.0;   // slope over the first third
  bool strictly_decreasing = false;
};

// Thirds are max(2, n / 3) long.
TrendStatistics trend_statistics(const std::vector<double>& values);

struct TrendResult {
  TrendCategory category = TrendCategory::NoDecline;
  TrendStatistics statistics;
};

// Rules, first match wins:
//   slope >= 0                                          -> NoDecline
//   strictly decreasing                                 -> ConstantDecline
//   first mean > (1 + good_ratio) last mean, flat start -> GoodThenDecline
//   spearman <= rank_threshold                          -> ConstantDecline
//   residual_cv > fluctuation_cv                        -> FluctuatingDecline
//   otherwise                                           -> ConstantDecline
// Throws PreconditionError for sequences shorter than params.min_length.
TrendResult classify_trend(const CitationSequence& sequence, const TrendParams& params = {});

// Linear interpolation onto `length` evenly spaced points.
std::vector<double> resample(const std::vector<double>& values, std::size_t length);

struct ClassifiedSequence {
  CitationSequence sequence;
  TrendResult result;
};

// Pointwise mean of the resampled sequences per category. Categories with no
// members are omitted.
std::map<TrendCategory, std::vector<double>> category_profiles(const std::vector<ClassifiedSequence>& sequences,
                                                               std::size_t length = 20);

// Accepted papers each reviewer reported on, ordered by acceptance date then
// paper id, valued by their windowed citations.
std::vector<CitationSequence> accepted_sequences(const Corpus& corpus, const std::vector<std::string>& reviewer_ids);

struct TrendExclusion {
  std::string reviewer_id;
  std::string reason;
};

struct TrendReport {
  std::vector<ClassifiedSequence> classified;
  std::vector<TrendExclusion> excluded;
  std::map<TrendCategory, std::vector<double>> profiles;
};

TrendReport profile_reviewers(const Corpus& corpus, const std::vector<std::string>& reviewer_ids,
                              const TrendParams& params = {}, std::size_t profile_length = 20);

}  // namespace refaudit
