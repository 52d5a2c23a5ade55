#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "refaudit/editor_metrics.hpp"
#include "refaudit/matrix.hpp"
#include "refaudit/reviewer_metrics.hpp"

namespace refaudit {

enum class Role { Editor, Reviewer };

std::string_view to_string(Role role);
std::optional<Role> parse_role(std::string_view text);

// Editors: MEAT, RDI, RADI, SRI. Reviewers: MRAT, MRSD, TDI, EDI, AR, MTD, DFI.
const std::vector<std::string>& feature_names(Role role);

struct EligibilityRule {
  std::int64_t min_assignments = 5;
  std::int64_t min_accepts = 1;
};

// Keeps agents with enough assignments and accepts dated before the corpus
// cutoff year (the profile's *_before_cutoff counters).
std::vector<EditorProfile> eligibility_filter(const std::vector<EditorProfile>& profiles,
                                              const EligibilityRule& rule = {});
std::vector<ReviewerProfile> eligibility_filter(const std::vector<ReviewerProfile>& profiles,
                                                const EligibilityRule& rule = {});

// Feature values before imputation; nullopt marks an undefined metric.
struct RawFeatures {
  std::vector<std::string> agent_ids;
  std::vector<std::string> feature_names;
  std::vector<std::vector<std::optional<double>>> rows;
};

RawFeatures raw_features(const std::vector<EditorProfile>& profiles);
RawFeatures raw_features(const std::vector<ReviewerProfile>& profiles);

struct FeatureMatrix {
  std::vector<std::string> agent_ids;
  std::vector<std::string> feature_names;
  Matrix rows;
  std::vector<bool> zero_variance;  // per column
  bool standardized = false;
  std::vector<std::string> warnings;
};

// Median-imputes undefined entries per column, then z-scores each column with
// the population standard deviation. Zero-variance columns become zeros.
// Throws ConfigError when a column has no defined value.
FeatureMatrix build_features(const RawFeatures& raw, bool standardize = true);

}  // namespace refaudit
