#include "refaudit/editor_metrics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "refaudit/error.hpp"

namespace refaudit {

namespace {

bool counts_for_diversity(const Assignment& a, const DiversityOptions& options) {
  return options.count_declines || !a.declined.has_value();
}

struct EditorAccumulator {
  std::vector<Date> assign_dates;
  std::set<std::size_t> self_reviewed_papers;
  std::int64_t declines = 0;
  std::int64_t before_cutoff = 0;
  std::int64_t accepts_before_cutoff = 0;
  std::map<std::string, std::int64_t> reviewer_counts;
  std::map<std::string, std::int64_t> pair_counts;
};

void add_assignment(EditorAccumulator& acc, const Assignment& a, const Corpus& corpus,
                    const DiversityOptions& options) {
  if (a.declined) ++acc.declines;
  if (a.self_review) acc.self_reviewed_papers.insert(a.paper);
  if (!counts_for_diversity(a, options)) return;
  ++acc.reviewer_counts[a.reviewer_id];
  for (const auto& author : corpus.paper(a.paper).author_ids) {
    // '\x1f' cannot appear in a JSON-sourced id without escaping, so the key is unambiguous.
    ++acc.pair_counts[a.reviewer_id + '\x1f' + author];
  }
}

std::map<std::string, EditorAccumulator> accumulate(const Corpus& corpus, const DiversityOptions& options,
                                                    std::string_view only = {}) {
  std::map<std::string, EditorAccumulator> acc;
  const int cutoff = corpus.settings().analysis_cutoff_year;
  for (std::size_t i = 0; i < corpus.papers().size(); ++i) {
    const auto& paper = corpus.paper(i);
    if (!paper.is_decided()) continue;
    for (const auto& [editor, date] : corpus.paper_editors(i)) {
      if (!only.empty() && editor != only) continue;
      auto& e = acc[editor];
      e.assign_dates.push_back(date);
      if (date.year() < cutoff) ++e.before_cutoff;
      const auto decided = corpus.decision_date(i);
      if (paper.final_decision == FinalDecision::Accepted && decided && decided->year() < cutoff) {
        ++e.accepts_before_cutoff;
      }
    }
  }
  for (const auto& a : corpus.assignments()) {
    if (!corpus.paper(a.paper).is_decided()) continue;
    if (!only.empty() && a.editor_id != only) continue;
    add_assignment(acc[a.editor_id], a, corpus, options);
  }
  return acc;
}

std::optional<double> entropy_or_undefined(const std::map<std::string, std::int64_t>& counts, LogBase base) {
  if (counts.empty()) return std::nullopt;
  return shannon_entropy(counts, base);
}

}  // namespace

std::optional<double> mean_gap_days(std::span<const Date> sorted_dates) {
  if (sorted_dates.size() < 2) return std::nullopt;
  if (!std::is_sorted(sorted_dates.begin(), sorted_dates.end())) {
    throw PreconditionError("assignment dates must be sorted ascending");
  }
  // The telescoping sum of gaps is last - first.
  const auto span_days = days_between(sorted_dates.front(), sorted_dates.back());
  return static_cast<double>(span_days) / static_cast<double>(sorted_dates.size() - 1);
}

std::optional<double> sri(std::int64_t n_assigned, std::int64_t n_self_reviewed) {
  if (n_assigned <= 0) return std::nullopt;
  if (n_self_reviewed < 0 || n_self_reviewed > n_assigned) {
    throw PreconditionError("sri: self-review count must lie in [0, n_assigned]");
  }
  return static_cast<double>(n_self_reviewed) / static_cast<double>(n_assigned);
}

std::optional<double> rdi(std::string_view editor_id, const Corpus& corpus, const DiversityOptions& options) {
  auto acc = accumulate(corpus, options, editor_id);
  auto it = acc.find(std::string(editor_id));
  if (it == acc.end()) return std::nullopt;
  return entropy_or_undefined(it->second.reviewer_counts, options.log_base);
}

std::optional<double> radi(std::string_view editor_id, const Corpus& corpus, const DiversityOptions& options) {
  auto acc = accumulate(corpus, options, editor_id);
  auto it = acc.find(std::string(editor_id));
  if (it == acc.end()) return std::nullopt;
  return entropy_or_undefined(it->second.pair_counts, options.log_base);
}

std::vector<EditorProfile> editor_profiles(const Corpus& corpus, const DiversityOptions& options) {
  std::vector<EditorProfile> out;
  for (auto& [id, acc] : accumulate(corpus, options)) {
    if (acc.assign_dates.empty()) continue;  // only ever seen as assigning a reviewer
    std::sort(acc.assign_dates.begin(), acc.assign_dates.end());
    EditorProfile p;
    p.editor_id = id;
    p.n_assignments = static_cast<std::int64_t>(acc.assign_dates.size());
    // A paper can list its editor more than once; never report SRI above one.
    p.n_self_reviewed = std::min(static_cast<std::int64_t>(acc.self_reviewed_papers.size()), p.n_assignments);
    p.meat = meat(acc.assign_dates);
    p.sri = sri(p.n_assignments, p.n_self_reviewed);
    p.rdi = entropy_or_undefined(acc.reviewer_counts, options.log_base);
    p.radi = entropy_or_undefined(acc.pair_counts, options.log_base);
    p.n_declines_received = acc.declines;
    p.assignments_before_cutoff = acc.before_cutoff;
    p.accepts_before_cutoff = acc.accepts_before_cutoff;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace refaudit
