#include "refaudit/reviewer_metrics.hpp"

#include <algorithm>
#include <map>

#include "refaudit/error.hpp"

namespace refaudit {

namespace {

std::optional<double> mean_delay(std::span<const DatedPair> pairs, const char* what) {
  if (pairs.empty()) return std::nullopt;
  double total = 0.0;
  for (const auto& [start, end] : pairs) {
    const auto delay = days_between(start, end);
    if (delay < 0) {
      throw PreconditionError(std::string(what) + " on " + end.to_string() + " precedes assignment on " +
                              start.to_string());
    }
    total += static_cast<double>(delay);
  }
  return total / static_cast<double>(pairs.size());
}

struct ReviewerAccumulator {
  std::vector<Date> assign_dates;
  std::vector<DatedPair> reports;
  std::vector<DatedPair> declines;
  std::map<std::string, std::int64_t> keywords;
  std::map<std::string, std::int64_t> editors;
  std::int64_t accept = 0;
  std::int64_t reject = 0;
  std::int64_t pending = 0;
  bool self_review = false;
  std::int64_t before_cutoff = 0;
  std::int64_t accepts_before_cutoff = 0;
};

std::map<std::string, ReviewerAccumulator> accumulate(const Corpus& corpus, std::string_view only = {}) {
  std::map<std::string, ReviewerAccumulator> acc;
  const int cutoff = corpus.settings().analysis_cutoff_year;
  for (const auto& a : corpus.assignments()) {
    const auto& paper = corpus.paper(a.paper);
    if (!paper.is_decided()) continue;
    if (!only.empty() && a.reviewer_id != only) continue;
    auto& r = acc[a.reviewer_id];
    r.assign_dates.push_back(a.assigned);
    ++r.editors[a.editor_id];
    r.self_review = r.self_review || a.self_review;
    if (a.assigned.year() < cutoff) ++r.before_cutoff;
    if (a.declined) {
      r.declines.emplace_back(a.assigned, *a.declined);
    } else if (a.reported) {
      r.reports.emplace_back(a.assigned, *a.reported);
      for (const auto& k : paper.keywords) ++r.keywords[k];
      if (a.verdict == Verdict::Accept) {
        ++r.accept;
        if (a.reported->year() < cutoff) ++r.accepts_before_cutoff;
      } else {
        ++r.reject;
      }
    } else {
      ++r.pending;
    }
  }
  return acc;
}

std::optional<double> entropy_or_undefined(const std::map<std::string, std::int64_t>& counts, LogBase base) {
  if (counts.empty()) return std::nullopt;
  return shannon_entropy(counts, base);
}

}  // namespace

std::optional<double> mrsd(std::span<const DatedPair> assignment_report_pairs) {
  return mean_delay(assignment_report_pairs, "report");
}

std::optional<double> mtd(std::span<const DatedPair> decline_pairs) { return mean_delay(decline_pairs, "decline"); }

std::optional<double> ar(std::int64_t n_accept, std::int64_t n_reject) {
  if (n_accept < 0 || n_reject < 0) throw PreconditionError("ar: negative count");
  if (n_accept + n_reject == 0) return std::nullopt;
  return static_cast<double>(n_accept) / static_cast<double>(n_accept + n_reject);
}

std::optional<double> dfi(std::int64_t n_assignments, std::int64_t n_declines) {
  if (n_assignments <= 0) return std::nullopt;
  if (n_declines < 0 || n_declines > n_assignments) {
    throw PreconditionError("dfi: declines must lie in [0, n_assignments]");
  }
  return static_cast<double>(n_declines) / static_cast<double>(n_assignments);
}

std::optional<double> tdi(std::string_view reviewer_id, const Corpus& corpus, LogBase base) {
  auto acc = accumulate(corpus, reviewer_id);
  auto it = acc.find(std::string(reviewer_id));
  if (it == acc.end()) return std::nullopt;
  return entropy_or_undefined(it->second.keywords, base);
}

std::optional<double> edi(std::string_view reviewer_id, const Corpus& corpus, LogBase base) {
  auto acc = accumulate(corpus, reviewer_id);
  auto it = acc.find(std::string(reviewer_id));
  if (it == acc.end()) return std::nullopt;
  return entropy_or_undefined(it->second.editors, base);
}

std::vector<ReviewerProfile> reviewer_profiles(const Corpus& corpus, LogBase base) {
  std::vector<ReviewerProfile> out;
  for (auto& [id, acc] : accumulate(corpus)) {
    std::sort(acc.assign_dates.begin(), acc.assign_dates.end());
    ReviewerProfile p;
    p.reviewer_id = id;
    p.n_assignments = static_cast<std::int64_t>(acc.assign_dates.size());
    p.n_declines = static_cast<std::int64_t>(acc.declines.size());
    p.n_reports = static_cast<std::int64_t>(acc.reports.size());
    p.n_pending = acc.pending;
    p.n_accept = acc.accept;
    p.n_reject = acc.reject;
    p.mrat = mrat(acc.assign_dates);
    p.mrsd = mrsd(acc.reports);
    p.tdi = entropy_or_undefined(acc.keywords, base);
    p.edi = entropy_or_undefined(acc.editors, base);
    p.ar = ar(acc.accept, acc.reject);
    p.mtd = mtd(acc.declines);
    p.dfi = dfi(p.n_assignments, p.n_declines);
    p.is_editor_self_review = acc.self_review;
    p.assignments_before_cutoff = acc.before_cutoff;
    p.accepts_before_cutoff = acc.accepts_before_cutoff;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace refaudit
