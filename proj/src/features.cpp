#include "refaudit/features.hpp"

#include <cmath>

#include "refaudit/error.hpp"
#include "refaudit/stats.hpp"

namespace refaudit {

namespace {

template <typename Profile>
std::vector<Profile> filter_profiles(const std::vector<Profile>& profiles, const EligibilityRule& rule) {
  std::vector<Profile> out;
  for (const auto& p : profiles) {
    if (p.assignments_before_cutoff >= rule.min_assignments && p.accepts_before_cutoff >= rule.min_accepts) {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(Role role) { return role == Role::Editor ? "editor" : "reviewer"; }

std::optional<Role> parse_role(std::string_view text) {
  if (text == "editor") return Role::Editor;
  if (text == "reviewer") return Role::Reviewer;
  return std::nullopt;
}

const std::vector<std::string>& feature_names(Role role) {
  static const std::vector<std::string> editor{"MEAT", "RDI", "RADI", "SRI"};
  static const std::vector<std::string> reviewer{"MRAT", "MRSD", "TDI", "EDI", "AR", "MTD", "DFI"};
  return role == Role::Editor ? editor : reviewer;
}

std::vector<EditorProfile> eligibility_filter(const std::vector<EditorProfile>& profiles, const EligibilityRule& rule) {
  return filter_profiles(profiles, rule);
}

std::vector<ReviewerProfile> eligibility_filter(const std::vector<ReviewerProfile>& profiles,
                                                const EligibilityRule& rule) {
  return filter_profiles(profiles, rule);
}

RawFeatures raw_features(const std::vector<EditorProfile>& profiles) {
  RawFeatures raw;
  raw.feature_names = feature_names(Role::Editor);
  for (const auto& p : profiles) {
    raw.agent_ids.push_back(p.editor_id);
    raw.rows.push_back({p.meat, p.rdi, p.radi, p.sri});
  }
  return raw;
}

RawFeatures raw_features(const std::vector<ReviewerProfile>& profiles) {
  RawFeatures raw;
  raw.feature_names = feature_names(Role::Reviewer);
  for (const auto& p : profiles) {
    raw.agent_ids.push_back(p.reviewer_id);
    raw.rows.push_back({p.mrat, p.mrsd, p.tdi, p.edi, p.ar, p.mtd, p.dfi});
  }
  return raw;
}

FeatureMatrix build_features(const RawFeatures& raw, bool standardize) {
  const std::size_t n = raw.rows.size();
  const std::size_t d = raw.feature_names.size();
  FeatureMatrix fm;
  fm.agent_ids = raw.agent_ids;
  fm.feature_names = raw.feature_names;
  fm.rows = Matrix(n, d);
  fm.zero_variance.assign(d, false);
  fm.standardized = standardize;
  if (n == 0) return fm;

  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> defined;
    for (const auto& row : raw.rows) {
      if (row.size() != d) throw PreconditionError("feature rows are not rectangular");
      if (row[j]) defined.push_back(*row[j]);
    }
    if (defined.empty()) {
      throw ConfigError("feature " + raw.feature_names[j] + " is undefined for every agent");
    }
    const double fill = stats::median(defined);
    for (std::size_t i = 0; i < n; ++i) fm.rows(i, j) = raw.rows[i][j].value_or(fill);
  }

  if (n == 1 && standardize) fm.warnings.push_back("single agent: standardized features degenerate to zeros");
  for (std::size_t j = 0; j < d; ++j) {
    const auto col = fm.rows.column(j);
    const double mu = stats::mean(col);
    const double sigma = stats::population_stddev(col);
    if (sigma == 0.0) {
      fm.zero_variance[j] = true;
      if (n > 1) fm.warnings.push_back("feature " + fm.feature_names[j] + " has zero variance");
    }
    if (!standardize) continue;
    for (std::size_t i = 0; i < n; ++i) fm.rows(i, j) = sigma == 0.0 ? 0.0 : (col[i] - mu) / sigma;
  }
  return fm;
}

}  // namespace refaudit
