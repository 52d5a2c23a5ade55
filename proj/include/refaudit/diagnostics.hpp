#pragma once

// Binned median-average-citation analyses and auxiliary corpus diagnostics.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "refaudit/date.hpp"
#include "refaudit/editor_metrics.hpp"
#include "refaudit/ledger.hpp"

namespace refaudit {

enum class BinningKind { EqualWidthOverRange, FixedTenthBuckets, EqualCountBuckets };

struct BinningScheme {
  BinningKind kind = BinningKind::EqualWidthOverRange;
  int n_bins = 10;
  // Unset means the observed min/max of the binned values.
  std::optional<std::pair<double, double>> range;

  // "equal-width:N[:LO:HI]", "tenths[:LO:HI]", "equal-count:N".
  static BinningScheme parse(const std::string& text);
  std::string to_string() const;
};

struct BinSummary {
  int bin_index = 0;
  double bin_lower = 0.0;
  double bin_upper = 0.0;
  std::int64_t n_agents = 0;
  std::optional<double> mac_accepted;
  std::optional<double> mac_rejected;
};

struct PaperOutcome {
  FinalDecision decision = FinalDecision::Unknown;
  std::optional<std::int64_t> citations;  // nullopt: no citation profile
};

using AgentMetric = std::map<std::string, double>;
using AgentPapers = std::map<std::string, std::vector<PaperOutcome>>;

struct AverageCitations {
  std::optional<double> accepted;
  std::optional<double> rejected;
};

// Mean windowed citation of an agent's accepted and rejected papers, skipping
// papers whose citations are unavailable.
AverageCitations average_citations(std::span<const PaperOutcome> papers);

// Decided papers handled by each editor / reported on by each reviewer.
AgentPapers editor_papers(const Corpus& corpus);
AgentPapers reviewer_papers(const Corpus& corpus);

// Bins agents by metric and reports, per bin, the median over member agents
// of their per-agent average citations. Values outside the configured range
// are clamped into the boundary bins.
std::vector<BinSummary> mac_by_bin(const AgentMetric& agent_metric, const AgentPapers& agent_papers,
                                   const BinningScheme& scheme);

// Bin index per agent under the same rules mac_by_bin uses, with bin bounds.
struct BinLayout {
  std::vector<std::pair<double, double>> bounds;
  std::map<std::string, int> agent_bin;
};
BinLayout layout_bins(const AgentMetric& agent_metric, const BinningScheme& scheme);

// ReviewerDeclined events by calendar month; all twelve months present.
std::map<int, std::int64_t> declines_by_month(const Corpus& corpus);

struct RdiDeclines {
  std::string editor_id;
  double rdi = 0.0;
  std::int64_t n_declines_received = 0;
};
std::vector<RdiDeclines> rdi_vs_declines(const Corpus& corpus, const DiversityOptions& options = {});

struct DormantReviewer {
  std::string reviewer_id;
  Date last_assignment;
  // Last assignment was accepted-to-review and never reported.
  bool agreed_without_report = false;
};
// Reviewers whose last assignment is strictly older than `now` minus
// `dormancy_years` calendar years, sorted by id.
std::vector<DormantReviewer> dormant_reviewers(const Corpus& corpus, Date now, int dormancy_years = 2);

// Right-continuous empirical CDF: one (x, F(x)) step per distinct value.
std::vector<std::pair<double, double>> citation_cdf(std::span<const double> values);

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

// F(x) for a step list produced by citation_cdf.
double cdf_at(const std::vector<std::pair<double, double>>& steps, double x);

}  // namespace refaudit
