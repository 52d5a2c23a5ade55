#include "refaudit/trend.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "refaudit/error.hpp"
#include "refaudit/stats.hpp"

namespace refaudit {

std::string_view to_string(TrendCategory category) {
  switch (category) {
    case TrendCategory::ConstantDecline:
      return "ConstantDecline";
    case TrendCategory::GoodThenDecline:
      return "GoodThenDecline";
    case TrendCategory::FluctuatingDecline:
      return "FluctuatingDecline";
    case TrendCategory::NoDecline:
      return "NoDecline";
  }
  return "?";
}

TrendStatistics trend_statistics(const std::vector<double>& values) {
  const auto n = values.size();
  if (n < 2) throw PreconditionError("trend statistics need at least two values");
  TrendStatistics s;
  s.slope = stats::index_slope(values);

  std::vector<double> index(n);
  for (std::size_t i = 0; i < n; ++i) index[i] = static_cast<double>(i);
  s.spearman = stats::spearman(index, values);

  const double mean = stats::mean(values);
  const double xbar = 0.5 * static_cast<double>(n - 1);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = values[i] - (mean + s.slope * (static_cast<double>(i) - xbar));
    ss += r * r;
  }
  const double residual_sd = std::sqrt(ss / static_cast<double>(n));
  s.residual_cv = mean > 0.0 ? residual_sd / mean : 0.0;

  const std::size_t third = std::min(n, std::max<std::size_t>(2, n / 3));
  const std::vector<double> first(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(third));
  const std::vector<double> last(values.end() - static_cast<std::ptrdiff_t>(third), values.end());
  s.first_mean = stats::mean(first);
  s.last_mean = stats::mean(last);
  s.first_slope = stats::index_slope(first);

  s.strictly_decreasing = true;
  for (std::size_t i = 1; i < n; ++i) {
    if (!(values[i] < values[i - 1])) s.strictly_decreasing = false;
  }
  return s;
}

TrendResult classify_trend(const CitationSequence& sequence, const TrendParams& params) {
  const auto n = sequence.values.size();
  if (n < std::max<std::size_t>(params.min_length, 2)) {
    throw PreconditionError("sequence of length " + std::to_string(n) + " is shorter than the minimum " +
                            std::to_string(params.min_length));
  }
  for (double v : sequence.values) {
    if (v < 0.0) throw PreconditionError("citation sequence holds a negative value");
  }
  TrendResult out;
  out.statistics = trend_statistics(sequence.values);
  const auto& s = out.statistics;
  if (s.slope >= 0.0) {
    out.category = TrendCategory::NoDecline;
  } else if (s.strictly_decreasing) {
    out.category = TrendCategory::ConstantDecline;
  } else if (s.first_mean > (1.0 + params.good_ratio) * s.last_mean &&
             std::abs(s.first_slope) <= params.flat_fraction * std::abs(s.slope)) {
    out.category = TrendCategory::GoodThenDecline;
  } else if (s.spearman <= params.rank_threshold) {
    out.category = TrendCategory::ConstantDecline;
  } else if (s.residual_cv > params.fluctuation_cv) {
    out.category = TrendCategory::FluctuatingDecline;
  } else {
    out.category = TrendCategory::ConstantDecline;
  }
  return out;
}

std::vector<double> resample(const std::vector<double>& values, std::size_t length) {
  if (values.empty()) throw PreconditionError("cannot resample an empty sequence");
  if (length == 0) return {};
  std::vector<double> out(length);
  if (values.size() == 1 || length == 1) {
    std::fill(out.begin(), out.end(), values.front());
    if (length == 1) out[0] = values.front();
    return out;
  }
  const double scale = static_cast<double>(values.size() - 1) / static_cast<double>(length - 1);
  for (std::size_t j = 0; j < length; ++j) {
    const double pos = static_cast<double>(j) * scale;
    const auto lo = std::min(static_cast<std::size_t>(pos), values.size() - 1);
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    out[j] = frac == 0.0 ? values[lo] : values[lo] + frac * (values[hi] - values[lo]);
  }
  return out;
}

std::map<TrendCategory, std::vector<double>> category_profiles(const std::vector<ClassifiedSequence>& sequences,
                                                               std::size_t length) {
  std::map<TrendCategory, std::vector<double>> sums;
  std::map<TrendCategory, std::size_t> counts;
  for (const auto& cs : sequences) {
    const auto r = resample(cs.sequence.values, length);
    auto& sum = sums[cs.result.category];
    if (sum.empty()) sum.assign(length, 0.0);
    for (std::size_t j = 0; j < length; ++j) sum[j] += r[j];
    ++counts[cs.result.category];
  }
  for (auto& [category, sum] : sums) {
    for (auto& v : sum) v /= static_cast<double>(counts[category]);
  }
  return sums;
}

std::vector<CitationSequence> accepted_sequences(const Corpus& corpus, const std::vector<std::string>& reviewer_ids) {
  // (acceptance date, paper id, citations) per reviewer.
  std::map<std::string, std::vector<std::tuple<Date, std::string, double>>> rows;
  for (const auto& id : reviewer_ids) rows[id];
  const int window = corpus.settings().citation_window_years;
  for (const auto& a : corpus.assignments()) {
    if (!a.reported) continue;
    auto it = rows.find(a.reviewer_id);
    if (it == rows.end()) continue;
    const auto& paper = corpus.paper(a.paper);
    if (paper.final_decision != FinalDecision::Accepted) continue;
    const auto accepted_on = corpus.decision_date(a.paper).value_or(*a.reported);
    it->second.emplace_back(accepted_on, paper.paper_id, static_cast<double>(citation_window(paper, window)));
  }
  std::vector<CitationSequence> out;
  for (const auto& id : reviewer_ids) {
    auto& list = rows[id];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end(),
                           [](const auto& x, const auto& y) { return std::get<1>(x) == std::get<1>(y); }),
               list.end());
    CitationSequence seq;
    seq.reviewer_id = id;
    for (const auto& row : list) seq.values.push_back(std::get<2>(row));
    out.push_back(std::move(seq));
  }
  return out;
}

TrendReport profile_reviewers(const Corpus& corpus, const std::vector<std::string>& reviewer_ids,
                              const TrendParams& params, std::size_t profile_length) {
  TrendReport report;
  for (auto& seq : accepted_sequences(corpus, reviewer_ids)) {
    if (seq.values.size() < std::max<std::size_t>(params.min_length, 2)) {
      report.excluded.push_back({seq.reviewer_id, "only " + std::to_string(seq.values.size()) +
                                                      " accepted papers (minimum " + std::to_string(params.min_length) +
                                                      ")"});
      continue;
    }
    auto result = classify_trend(seq, params);
    report.classified.push_back({std::move(seq), result});
  }
  report.profiles = category_profiles(report.classified, profile_length);
  return report;
}

}  // namespace refaudit
