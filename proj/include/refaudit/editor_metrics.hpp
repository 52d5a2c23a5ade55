#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "refaudit/date.hpp"
#include "refaudit/entropy.hpp"
#include "refaudit/ledger.hpp"

namespace refaudit {

struct EditorProfile {
  std::string editor_id;
  std::int64_t n_assignments = 0;       // papers handled as editor
  std::int64_t n_self_reviewed = 0;
  std::optional<double> meat;            // days, undefined below two assignments
  std::optional<double> rdi;
  std::optional<double> radi;
  std::optional<double> sri;
  std::int64_t n_declines_received = 0;
  // Counts restricted to events dated before the analysis cutoff year.
  std::int64_t assignments_before_cutoff = 0;
  std::int64_t accepts_before_cutoff = 0;
};

struct DiversityOptions {
  // When set, declined reviewer assignments count toward RDI/RADI.
  bool count_declines = false;
  LogBase log_base;
};

// Mean of consecutive day gaps over sorted dates. nullopt for fewer than two.
std::optional<double> mean_gap_days(std::span<const Date> sorted_dates);

inline std::optional<double> meat(std::span<const Date> editor_assign_dates) {
  return mean_gap_days(editor_assign_dates);
}

// Fraction of handled papers where the editor assigned themself as reviewer.
std::optional<double> sri(std::int64_t n_assigned, std::int64_t n_self_reviewed);

std::optional<double> rdi(std::string_view editor_id, const Corpus& corpus, const DiversityOptions& options = {});
std::optional<double> radi(std::string_view editor_id, const Corpus& corpus, const DiversityOptions& options = {});

// One profile per editor appearing in an EditorAssigned event on a decided
// paper, sorted by editor id.
std::vector<EditorProfile> editor_profiles(const Corpus& corpus, const DiversityOptions& options = {});

}  // namespace refaudit
