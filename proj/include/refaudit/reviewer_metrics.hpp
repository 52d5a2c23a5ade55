#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "refaudit/date.hpp"
#include "refaudit/editor_metrics.hpp"
#include "refaudit/entropy.hpp"
#include "refaudit/ledger.hpp"

namespace refaudit {

struct ReviewerProfile {
  std::string reviewer_id;
  std::int64_t n_assignments = 0;  // every assignment, declined or not
  std::int64_t n_declines = 0;
  std::int64_t n_reports = 0;
  std::int64_t n_pending = 0;      // agreed, never reported
  std::int64_t n_accept = 0;
  std::int64_t n_reject = 0;
  std::optional<double> mrat;
  std::optional<double> mrsd;
  std::optional<double> tdi;
  std::optional<double> edi;
  std::optional<double> ar;
  std::optional<double> mtd;
  std::optional<double> dfi;
  bool is_editor_self_review = false;  // at least one assignment was a self-review
  std::int64_t assignments_before_cutoff = 0;
  std::int64_t accepts_before_cutoff = 0;
};

// (assigned, closed) date pair for one assignment.
using DatedPair = std::pair<Date, Date>;

inline std::optional<double> mrat(std::span<const Date> reviewer_assign_dates) {
  return mean_gap_days(reviewer_assign_dates);
}

// Mean report delay over completed reviews. Throws PreconditionError when a
// report predates its assignment.
std::optional<double> mrsd(std::span<const DatedPair> assignment_report_pairs);

// Mean delay between assignment and decline notification.
std::optional<double> mtd(std::span<const DatedPair> decline_pairs);

std::optional<double> ar(std::int64_t n_accept, std::int64_t n_reject);
std::optional<double> dfi(std::int64_t n_assignments, std::int64_t n_declines);

std::optional<double> tdi(std::string_view reviewer_id, const Corpus& corpus, LogBase base = {});
std::optional<double> edi(std::string_view reviewer_id, const Corpus& corpus, LogBase base = {});

// One profile per reviewer (including editors reviewing their own papers),
// sorted by reviewer id.
std::vector<ReviewerProfile> reviewer_profiles(const Corpus& corpus, LogBase base = {});

}  // namespace refaudit
