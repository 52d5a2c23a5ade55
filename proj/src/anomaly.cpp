#include "refaudit/anomaly.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "refaudit/error.hpp"
#include "refaudit/reviewer_metrics.hpp"

namespace refaudit {

namespace {

struct ClusterCitations {
  std::vector<double> accepted[2];
  std::vector<double> rejected[2];
};

ClusterCitations gather(const ClusterResult& result, const AgentPapers& agent_papers) {
  ClusterCitations out;
  for (std::size_t i = 0; i < result.agent_ids.size(); ++i) {
    auto it = agent_papers.find(result.agent_ids[i]);
    if (it == agent_papers.end()) continue;
    const auto avg = average_citations(it->second);
    const int c = result.assignments[i];
    if (avg.accepted) out.accepted[c].push_back(*avg.accepted);
    if (avg.rejected) out.rejected[c].push_back(*avg.rejected);
  }
  return out;
}

std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

CdfComparison compare(std::vector<double> anomalous, std::vector<double> normal, bool anomalous_should_be_lower) {
  CdfComparison out;
  out.anomalous = std::move(anomalous);
  out.normal = std::move(normal);
  if (out.anomalous.empty() || out.normal.empty()) return out;
  out.available = true;
  out.anomalous_cdf = citation_cdf(out.anomalous);
  out.normal_cdf = citation_cdf(out.normal);
  out.ks = ks_statistic(out.anomalous, out.normal);
  std::set<double> points(out.anomalous.begin(), out.anomalous.end());
  points.insert(out.normal.begin(), out.normal.end());
  out.dominance_holds = std::all_of(points.begin(), points.end(), [&](double x) {
    const double fa = cdf_at(out.anomalous_cdf, x);
    const double fn = cdf_at(out.normal_cdf, x);
    return anomalous_should_be_lower ? fa >= fn : fa <= fn;
  });
  return out;
}

}  // namespace

std::vector<std::size_t> ClusterResult::cluster_sizes() const {
  std::vector<std::size_t> sizes(centroids.rows() == 0 ? 2 : centroids.rows(), 0);
  for (int a : assignments) ++sizes.at(static_cast<std::size_t>(a));
  return sizes;
}

ClusterResult label_anomalous(ClusterResult result, const AgentPapers& agent_papers) {
  const auto sizes = result.cluster_sizes();
  if (sizes.size() != 2) throw PreconditionError("label_anomalous expects exactly two clusters");
  const auto cites = gather(result, agent_papers);
  const auto acc0 = mean_of(cites.accepted[0]);
  const auto acc1 = mean_of(cites.accepted[1]);
  const auto rej0 = mean_of(cites.rejected[0]);
  const auto rej1 = mean_of(cites.rejected[1]);

  if (sizes[0] != sizes[1]) {
    result.anomalous_label = sizes[0] < sizes[1] ? 0 : 1;
    result.label_source = LabelSource::ClusterSize;
  } else {
    result.label_source = LabelSource::Citation;
    if (acc0 && acc1) {
      result.anomalous_label = *acc0 <= *acc1 ? 0 : 1;
    } else if (rej0 && rej1) {
      result.anomalous_label = *rej0 >= *rej1 ? 0 : 1;
    } else {
      result.anomalous_label = 0;
      result.warnings.push_back("equal cluster sizes and no citation data to break the tie; cluster 0 labeled anomalous");
    }
  }

  const int a = result.anomalous_label;
  const auto& acc_a = a == 0 ? acc0 : acc1;
  const auto& acc_n = a == 0 ? acc1 : acc0;
  const auto& rej_a = a == 0 ? rej0 : rej1;
  const auto& rej_n = a == 0 ? rej1 : rej0;
  if (acc_a && acc_n && !(*acc_a < *acc_n)) {
    result.warnings.push_back("anomalous cluster does not have lower accepted-paper citations (" + fmt(*acc_a) +
                              " vs " + fmt(*acc_n) + ")");
  }
  if (rej_a && rej_n && !(*rej_a > *rej_n)) {
    result.warnings.push_back("anomalous cluster does not have higher rejected-paper citations (" + fmt(*rej_a) +
                              " vs " + fmt(*rej_n) + ")");
  }
  return result;
}

ValidationReport validate_cdf_separation(const ClusterResult& result, const AgentPapers& agent_papers) {
  if (result.anomalous_label < 0) throw PreconditionError("validate_cdf_separation needs labeled clusters");
  auto cites = gather(result, agent_papers);
  const int a = result.anomalous_label;
  const int n = 1 - a;
  ValidationReport report;
  report.accepted = compare(std::move(cites.accepted[a]), std::move(cites.accepted[n]), true);
  report.rejected = compare(std::move(cites.rejected[a]), std::move(cites.rejected[n]), false);
  return report;
}

DetectionRun detect(const Corpus& corpus, const DetectOptions& options) {
  DetectionRun run;
  AgentPapers papers;
  if (options.role == Role::Editor) {
    const auto eligible = eligibility_filter(editor_profiles(corpus, options.diversity), options.eligibility);
    if (eligible.empty()) throw Error("empty feature matrix: no editor passes the eligibility filter");
    run.features = build_features(raw_features(eligible), options.standardize);
    papers = editor_papers(corpus);
  } else {
    const auto eligible =
        eligibility_filter(reviewer_profiles(corpus, options.diversity.log_base), options.eligibility);
    if (eligible.empty()) throw Error("empty feature matrix: no reviewer passes the eligibility filter");
    run.features = build_features(raw_features(eligible), options.standardize);
    papers = reviewer_papers(corpus);
  }

  auto km_options = options.kmeans;
  km_options.k = 2;
  const auto km = kmeans(run.features.rows, km_options);

  ClusterResult clusters;
  clusters.role = options.role;
  clusters.agent_ids = run.features.agent_ids;
  clusters.assignments = km.assignments;
  clusters.feature_names = run.features.feature_names;
  clusters.centroids = km.centroids;
  clusters.objective = km.objective;
  clusters.n_iterations = km.n_iterations;
  clusters.seed = km.seed;
  clusters.warnings = run.features.warnings;
  run.clusters = label_anomalous(std::move(clusters), papers);
  run.validation = validate_cdf_separation(run.clusters, papers);
  return run;
}

Recovery score_recovery(const ClusterResult& result, const std::map<std::string, bool>& truth) {
  Recovery r;
  std::set<std::string> clustered;
  for (std::size_t i = 0; i < result.agent_ids.size(); ++i) {
    auto it = truth.find(result.agent_ids[i]);
    if (it == truth.end()) continue;
    clustered.insert(it->first);
    ++r.n_evaluated;
    const bool predicted = result.is_anomalous(i);
    if (predicted && it->second) ++r.true_positives;
    if (predicted && !it->second) ++r.false_positives;
    if (!predicted && it->second) ++r.false_negatives;
  }
  for (const auto& [id, anomalous] : truth) {
    if (anomalous && !clustered.contains(id)) ++r.anomalous_not_clustered;
  }
  const auto predicted = r.true_positives + r.false_positives;
  const auto actual = r.true_positives + r.false_negatives + r.anomalous_not_clustered;
  if (predicted) r.precision = static_cast<double>(r.true_positives) / static_cast<double>(predicted);
  if (actual) r.recall = static_cast<double>(r.true_positives) / static_cast<double>(actual);
  return r;
}

}  // namespace refaudit
