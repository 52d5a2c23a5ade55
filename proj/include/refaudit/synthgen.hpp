#pragma once

// Synthetic corpora with planted anomalous editors and reviewers.
//
// Anomalous editors handle more papers, draw reviewers from a small pool of
// anomalous reviewers, review their own papers often and see a narrow set of
// authors and keywords. Anomalous reviewers answer very fast or very slowly,
// decline often and late, and accept almost everything or almost nothing.
// Accepted papers touched by an anomalous agent are cited little; rejected
// ones are cited a lot once published elsewhere.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "refaudit/config.hpp"
#include "refaudit/ledger.hpp"

namespace refaudit {

struct EditorBehavior {
  double assignment_rate = 1.0;           // relative share of submissions
  int reviewer_pool_size = 0;             // 0: every reviewer of the editor's class
  double cross_class_reviewer_probability = 0.02;  // draw a reviewer of the other class instead
  double self_review_probability = 0.1;   // per paper
  double self_review_acceptance_probability = 0.6;
  double self_review_delay_median_days = 14.0;
  int author_pool_size = 0;               // 0: the whole author population
  int keyword_pool_size = 0;              // 0: the whole vocabulary
  double decision_delay_median_days = 10.0;
};

struct ReviewerBehavior {
  // Each reviewer draws one median and one acceptance probability uniformly
  // from these lists and keeps them.
  std::vector<double> report_delay_median_days{17.5};
  double report_delay_sigma = 0.45;       // log-normal shape
  std::vector<double> acceptance_probability{0.65};
  double decline_probability = 0.15;
  double decline_delay_median_days = 3.0;
  double decline_delay_sigma = 0.5;
  double no_report_probability = 0.02;    // agreed, never reported
};

struct PaperModel {
  double mean_extra_authors = 1.87;       // authors = 1 + Poisson(mean)
  int author_population = 20000;
  int vocabulary_size = 300;
  int keywords_per_paper = 4;
  int min_reviewers = 1;
  int max_reviewers = 2;
  int max_declines_per_slot = 3;
  double withdrawn_probability = 0.02;
  double seasonal_decline_boost = 1.0;    // decline-probability multiplier in July and August
};

struct CitationModel {
  // Negative-binomial means of windowed citations.
  double accepted_mean_normal = 30.0;
  double accepted_mean_anomalous = 3.0;
  double rejected_mean_normal = 4.0;
  double rejected_mean_anomalous = 25.0;
  double dispersion = 5.0;                // gamma shape of the Poisson mixture
  double external_publication_probability = 0.85;
  int post_window_years = 2;              // extra years of citations after the window
  // Per anomalous reviewer: weights of a steady decline, a good start then a
  // drop, and a noisy decline over time. Empty disables the modulation.
  std::vector<double> anomalous_trend_weights{0.425, 0.226, 0.349};
};

struct GeneratorConfig {
  std::uint64_t seed = 0;
  int n_editors = 95;
  int n_reviewers = 2000;
  int n_papers = 20000;
  double anomalous_editor_fraction = 0.25;
  double anomalous_reviewer_fraction = 0.10;
  int start_year = 1997;
  int time_span_years = 16;
  CorpusSettings settings;

  EditorBehavior normal_editor;
  EditorBehavior anomalous_editor{2.0, 10, 0.0, 0.6, 0.9, 14.0, 12, 6, 10.0};
  ReviewerBehavior normal_reviewer;
  ReviewerBehavior anomalous_reviewer{{3.0, 70.0}, 0.45, {0.95, 0.1}, 0.5, 20.0, 0.5, 0.02};
  PaperModel papers;
  CitationModel citations;

  // Throws ConfigError on out-of-range or infeasible settings.
  void validate() const;
};

// Missing keys keep their defaults; unknown keys are a ConfigError.
GeneratorConfig generator_config(const ConfigTable& table);
GeneratorConfig load_generator_config(const std::filesystem::path& path);

struct GroundTruth {
  std::map<std::string, bool> editors;    // id -> anomalous
  std::map<std::string, bool> reviewers;

  std::size_t anomalous_editors() const;
  std::size_t anomalous_reviewers() const;
};

struct SyntheticCorpus {
  Corpus corpus;
  GroundTruth truth;
};

// Deterministic per config (including seed). With n_papers == 0 both the
// corpus and the truth map are empty.
SyntheticCorpus generate(const GeneratorConfig& config);

// agent_id,role,label with label in {normal, anomalous}.
void write_truth_csv(const GroundTruth& truth, std::ostream& out);
GroundTruth read_truth_csv(std::istream& in);

}  // namespace refaudit
