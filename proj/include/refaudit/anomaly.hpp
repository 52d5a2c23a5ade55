#pragma once

// Unsupervised anomaly detection over editor or reviewer feature vectors:
// eligibility filter, feature assembly, two-cluster k-means, anomalous-cluster
// labeling and citation-CDF validation.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "refaudit/diagnostics.hpp"
#include "refaudit/editor_metrics.hpp"
#include "refaudit/features.hpp"
#include "refaudit/kmeans.hpp"
#include "refaudit/ledger.hpp"

namespace refaudit {

enum class LabelSource { ClusterSize, Citation };

struct ClusterResult {
  Role role = Role::Editor;
  std::vector<std::string> agent_ids;
  std::vector<int> assignments;  // 0 or 1 per agent, aligned with agent_ids
  std::vector<std::string> feature_names;
  Matrix centroids;  // standardized space unless standardization was disabled
  double objective = 0.0;
  int anomalous_label = -1;
  LabelSource label_source = LabelSource::ClusterSize;
  int n_iterations = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;

  std::vector<std::size_t> cluster_sizes() const;
  bool is_anomalous(std::size_t agent) const { return assignments.at(agent) == anomalous_label; }
};

// Labels the smaller cluster anomalous. Equal sizes fall back to the cluster
// with the lower mean accepted-paper average citation. Either way the
// anomalous cluster is checked for lower accepted and higher rejected
// citations; disagreements are appended to `warnings`.
ClusterResult label_anomalous(ClusterResult result, const AgentPapers& agent_papers);

struct CdfComparison {
  bool available = false;
  std::vector<double> anomalous;  // per-agent average citations
  std::vector<double> normal;
  std::vector<std::pair<double, double>> anomalous_cdf;
  std::vector<std::pair<double, double>> normal_cdf;
  double ks = 0.0;
  // Accepted: F_anomalous >= F_normal everywhere. Rejected: F_anomalous <= F_normal.
  bool dominance_holds = false;
};

struct ValidationReport {
  CdfComparison accepted;
  CdfComparison rejected;
};

ValidationReport validate_cdf_separation(const ClusterResult& result, const AgentPapers& agent_papers);

struct DetectOptions {
  Role role = Role::Editor;
  KMeansOptions kmeans;
  bool standardize = true;
  EligibilityRule eligibility;
  DiversityOptions diversity;
};

struct DetectionRun {
  FeatureMatrix features;
  ClusterResult clusters;
  ValidationReport validation;
};

// Full detection for one role. Throws Error("empty feature matrix") when no
// agent passes the eligibility filter.
DetectionRun detect(const Corpus& corpus, const DetectOptions& options);

// Agreement with planted labels (agent -> anomalous). Precision is over the
// clustered agents found in `truth`; recall is over every planted anomaly, so
// anomalies removed by the eligibility filter count as misses. Undefined
// ratios are nullopt.
struct Recovery {
  std::size_t n_evaluated = 0;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  std::size_t anomalous_not_clustered = 0;  // planted anomalies filtered out before clustering
  std::optional<double> precision;
  std::optional<double> recall;
};
Recovery score_recovery(const ClusterResult& result, const std::map<std::string, bool>& truth);

}  // namespace refaudit
