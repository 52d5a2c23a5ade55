#include "refaudit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "refaudit/error.hpp"
#include "refaudit/stats.hpp"

namespace refaudit {

namespace {

constexpr double kTenth = 0.1;
// Absorbs representation error such as 0.7 * 10 = 7.000000000000001.
constexpr double kBinSlack = 1e-9;

int clamp_index(double raw, int n_bins) {
  if (!(raw >= 0.0)) return 0;
  const auto idx = static_cast<long long>(std::floor(raw + kBinSlack));
  return static_cast<int>(std::clamp<long long>(idx, 0, n_bins - 1));
}

std::pair<double, double> observed_range(const AgentMetric& metric) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& [agent, v] : metric) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

BinLayout equal_width(const AgentMetric& metric, const BinningScheme& scheme) {
  if (scheme.n_bins < 1) throw ConfigError("equal-width binning needs n_bins >= 1");
  auto [lo, hi] = scheme.range.value_or(observed_range(metric));
  if (hi < lo) throw ConfigError("binning range is not well ordered");
  if (hi == lo) hi = lo + 1.0;
  const double width = (hi - lo) / scheme.n_bins;
  BinLayout layout;
  for (int i = 0; i < scheme.n_bins; ++i) {
    layout.bounds.emplace_back(lo + i * width, i + 1 == scheme.n_bins ? hi : lo + (i + 1) * width);
  }
  for (const auto& [agent, v] : metric) layout.agent_bin[agent] = clamp_index((v - lo) / width, scheme.n_bins);
  return layout;
}

BinLayout tenth_buckets(const AgentMetric& metric, const BinningScheme& scheme) {
  double lo = 0.0;
  double hi = 0.0;
  if (scheme.range) {
    std::tie(lo, hi) = *scheme.range;
    if (hi <= lo) throw ConfigError("binning range is not well ordered");
  } else {
    const auto [min_v, max_v] = observed_range(metric);
    lo = std::floor(min_v * 10.0 + kBinSlack) / 10.0;
    hi = std::max(lo + kTenth, std::ceil(max_v * 10.0 - kBinSlack) / 10.0);
  }
  const int n_bins = std::max(1, static_cast<int>(std::ceil((hi - lo) / kTenth - kBinSlack)));
  BinLayout layout;
  for (int i = 0; i < n_bins; ++i) layout.bounds.emplace_back(lo + i * kTenth, lo + (i + 1) * kTenth);
  for (const auto& [agent, v] : metric) layout.agent_bin[agent] = clamp_index((v - lo) / kTenth, n_bins);
  return layout;
}

BinLayout equal_count(const AgentMetric& metric, const BinningScheme& scheme) {
  if (scheme.n_bins < 1) throw ConfigError("equal-count binning needs n_bins >= 1");
  std::vector<std::pair<double, std::string>> sorted;
  for (const auto& [agent, v] : metric) sorted.emplace_back(v, agent);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const auto k = static_cast<std::size_t>(scheme.n_bins);
  BinLayout layout;
  std::size_t start = 0;
  for (std::size_t g = 0; g < k && start < n; ++g) {
    std::size_t end = std::max(start + 1, (g + 1) * n / k);
    // Equal values never straddle a boundary.
    while (end < n && sorted[end].first == sorted[end - 1].first) ++end;
    if (g + 1 == k) end = n;
    const double lower = sorted[start].first;
    const double upper = end < n ? sorted[end].first
                                 : std::nextafter(sorted[n - 1].first, std::numeric_limits<double>::infinity());
    const int bin = static_cast<int>(layout.bounds.size());
    layout.bounds.emplace_back(lower, upper);
    for (std::size_t i = start; i < end; ++i) layout.agent_bin[sorted[i].second] = bin;
    start = end;
  }
  return layout;
}

std::optional<double> median_or_undefined(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  return stats::median(std::move(values));
}

double parse_number(const std::string& text, const std::string& whole) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad binning scheme '" + whole + "'");
  }
}

}  // namespace

BinningScheme BinningScheme::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.empty()) throw ConfigError("empty binning scheme");
  BinningScheme scheme;
  std::size_t range_at = 0;
  if (parts[0] == "equal-width") {
    scheme.kind = BinningKind::EqualWidthOverRange;
    if (parts.size() != 2 && parts.size() != 4) throw ConfigError("expected equal-width:N[:LO:HI], got '" + text + "'");
    scheme.n_bins = static_cast<int>(parse_number(parts[1], text));
    range_at = 2;
  } else if (parts[0] == "tenths") {
    scheme.kind = BinningKind::FixedTenthBuckets;
    if (parts.size() != 1 && parts.size() != 3) throw ConfigError("expected tenths[:LO:HI], got '" + text + "'");
    range_at = 1;
  } else if (parts[0] == "equal-count") {
    scheme.kind = BinningKind::EqualCountBuckets;
    if (parts.size() != 2) throw ConfigError("expected equal-count:N, got '" + text + "'");
    scheme.n_bins = static_cast<int>(parse_number(parts[1], text));
  } else {
    throw ConfigError("unknown binning scheme '" + text + "'");
  }
  if (scheme.n_bins < 1) throw ConfigError("binning scheme needs at least one bin");
  if (range_at != 0 && parts.size() == range_at + 2) {
    const double lo = parse_number(parts[range_at], text);
    const double hi = parse_number(parts[range_at + 1], text);
    if (!(lo < hi)) throw ConfigError("binning range is not well ordered in '" + text + "'");
    scheme.range = std::make_pair(lo, hi);
  }
  return scheme;
}

std::string BinningScheme::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case BinningKind::EqualWidthOverRange:
      out << "equal-width:" << n_bins;
      break;
    case BinningKind::FixedTenthBuckets:
      out << "tenths";
      break;
    case BinningKind::EqualCountBuckets:
      out << "equal-count:" << n_bins;
      break;
  }
  if (range && kind != BinningKind::EqualCountBuckets) out << ':' << range->first << ':' << range->second;
  return out.str();
}

AverageCitations average_citations(std::span<const PaperOutcome> papers) {
  double acc_sum = 0.0, rej_sum = 0.0;
  std::int64_t acc_n = 0, rej_n = 0;
  for (const auto& p : papers) {
    if (!p.citations) continue;
    if (p.decision == FinalDecision::Accepted) {
      acc_sum += static_cast<double>(*p.citations);
      ++acc_n;
    } else if (p.decision == FinalDecision::Rejected) {
      rej_sum += static_cast<double>(*p.citations);
      ++rej_n;
    }
  }
  AverageCitations out;
  if (acc_n > 0) out.accepted = acc_sum / static_cast<double>(acc_n);
  if (rej_n > 0) out.rejected = rej_sum / static_cast<double>(rej_n);
  return out;
}

AgentPapers editor_papers(const Corpus& corpus) {
  AgentPapers out;
  const int window = corpus.settings().citation_window_years;
  for (std::size_t i = 0; i < corpus.papers().size(); ++i) {
    const auto& paper = corpus.paper(i);
    if (!paper.is_decided()) continue;
    const PaperOutcome outcome{paper.final_decision, paper_citation(paper, window)};
    std::string last;
    for (const auto& [editor, date] : corpus.paper_editors(i)) {
      if (editor == last) continue;
      auto& list = out[editor];
      list.push_back(outcome);
      last = editor;
    }
  }
  return out;
}

AgentPapers reviewer_papers(const Corpus& corpus) {
  AgentPapers out;
  const int window = corpus.settings().citation_window_years;
  for (const auto& a : corpus.assignments()) {
    if (!a.reported) continue;
    const auto& paper = corpus.paper(a.paper);
    if (!paper.is_decided()) continue;
    out[a.reviewer_id].push_back({paper.final_decision, paper_citation(paper, window)});
  }
  return out;
}

BinLayout layout_bins(const AgentMetric& agent_metric, const BinningScheme& scheme) {
  if (agent_metric.empty()) return {};
  switch (scheme.kind) {
    case BinningKind::EqualWidthOverRange:
      return equal_width(agent_metric, scheme);
    case BinningKind::FixedTenthBuckets:
      return tenth_buckets(agent_metric, scheme);
    case BinningKind::EqualCountBuckets:
      return equal_count(agent_metric, scheme);
  }
  return {};
}

std::vector<BinSummary> mac_by_bin(const AgentMetric& agent_metric, const AgentPapers& agent_papers,
                                   const BinningScheme& scheme) {
  const auto layout = layout_bins(agent_metric, scheme);
  const auto n_bins = layout.bounds.size();
  std::vector<std::vector<double>> accepted(n_bins), rejected(n_bins);
  std::vector<BinSummary> out(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) {
    out[b].bin_index = static_cast<int>(b);
    out[b].bin_lower = layout.bounds[b].first;
    out[b].bin_upper = layout.bounds[b].second;
  }
  for (const auto& [agent, bin] : layout.agent_bin) {
    ++out[bin].n_agents;
    auto it = agent_papers.find(agent);
    if (it == agent_papers.end()) continue;
    const auto avg = average_citations(it->second);
    if (avg.accepted) accepted[bin].push_back(*avg.accepted);
    if (avg.rejected) rejected[bin].push_back(*avg.rejected);
  }
  for (std::size_t b = 0; b < n_bins; ++b) {
    out[b].mac_accepted = median_or_undefined(std::move(accepted[b]));
    out[b].mac_rejected = median_or_undefined(std::move(rejected[b]));
  }
  return out;
}

std::map<int, std::int64_t> declines_by_month(const Corpus& corpus) {
  std::map<int, std::int64_t> out;
  for (int m = 1; m <= 12; ++m) out[m] = 0;
  for (const auto& e : corpus.events()) {
    if (e.kind == EventKind::ReviewerDeclined) ++out[static_cast<int>(e.date.month())];
  }
  return out;
}

std::vector<RdiDeclines> rdi_vs_declines(const Corpus& corpus, const DiversityOptions& options) {
  std::vector<RdiDeclines> out;
  for (const auto& p : editor_profiles(corpus, options)) {
    if (!p.rdi) continue;
    out.push_back({p.editor_id, *p.rdi, p.n_declines_received});
  }
  return out;
}

std::vector<DormantReviewer> dormant_reviewers(const Corpus& corpus, Date now, int dormancy_years) {
  if (dormancy_years < 0) throw PreconditionError("dormancy_years must be non-negative");
  // Latest assignment per reviewer; ties resolved by ledger order.
  std::map<std::string, const Assignment*> last;
  for (const auto& a : corpus.assignments()) {
    auto& slot = last[a.reviewer_id];
    if (slot == nullptr || slot->assigned <= a.assigned) slot = &a;
  }
  const Date threshold = now.minus_years(dormancy_years);
  std::vector<DormantReviewer> out;
  for (const auto& [reviewer, a] : last) {
    if (!(a->assigned < threshold)) continue;
    out.push_back({reviewer, a->assigned, !a->declined && !a->reported});
  }
  return out;
}

std::vector<std::pair<double, double>> citation_cdf(std::span<const double> values) {
  if (values.empty()) throw PreconditionError("citation_cdf: empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<std::pair<double, double>> steps;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    steps.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
  }
  steps.back().second = 1.0;
  return steps;
}

double cdf_at(const std::vector<std::pair<double, double>>& steps, double x) {
  auto it = std::upper_bound(steps.begin(), steps.end(), x,
                             [](double value, const auto& step) { return value < step.first; });
  if (it == steps.begin()) return 0.0;
  return std::prev(it)->second;
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw PreconditionError("ks_statistic: empty sample");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == x) ++i;
    while (j < sb.size() && sb[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace refaudit
