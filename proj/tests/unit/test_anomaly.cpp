#include <doctest.h>

#include "refaudit/anomaly.hpp"
#include "refaudit/error.hpp"

using namespace refaudit;

namespace {

ClusterResult two_clusters(std::vector<int> assignments) {
  ClusterResult r;
  for (std::size_t i = 0; i < assignments.size(); ++i) r.agent_ids.push_back("a" + std::to_string(i));
  r.assignments = std::move(assignments);
  r.centroids = Matrix(2, 1);
  return r;
}

PaperOutcome acc(std::int64_t c) { return {FinalDecision::Accepted, c}; }
PaperOutcome rej(std::int64_t c) { return {FinalDecision::Rejected, c}; }

}  // namespace

TEST_CASE("smaller cluster is anomalous") {
  AgentPapers papers{{"a0", {acc(2), rej(20)}}, {"a1", {acc(30), rej(1)}}, {"a2", {acc(40), rej(2)}}};
  const auto r = label_anomalous(two_clusters({1, 0, 0}), papers);
  CHECK(r.anomalous_label == 1);
  CHECK(r.label_source == LabelSource::ClusterSize);
  CHECK(r.warnings.empty());
  CHECK(r.is_anomalous(0));
  CHECK_FALSE(r.is_anomalous(1));
}

TEST_CASE("equal sizes break ties on accepted citations") {
  AgentPapers papers{{"a0", {acc(50)}}, {"a1", {acc(3)}}};
  const auto r = label_anomalous(two_clusters({0, 1}), papers);
  CHECK(r.anomalous_label == 1);
  CHECK(r.label_source == LabelSource::Citation);
}

TEST_CASE("citation disagreement is reported") {
  AgentPapers papers{{"a0", {acc(90)}}, {"a1", {acc(3)}}, {"a2", {acc(4)}}};
  const auto r = label_anomalous(two_clusters({0, 1, 1}), papers);
  CHECK(r.anomalous_label == 0);
  CHECK(r.warnings.size() == 1);
}

TEST_CASE("cdf validation") {
  AgentPapers papers{{"a0", {acc(1), rej(30)}}, {"a1", {acc(2), rej(20)}}, {"a2", {acc(40), rej(1)}},
                     {"a3", {acc(50), rej(3)}}, {"a4", {acc(60)}}};
  const auto r = label_anomalous(two_clusters({1, 1, 0, 0, 0}), papers);
  const auto v = validate_cdf_separation(r, papers);
  CHECK(v.accepted.available);
  CHECK(v.accepted.ks == 1.0);
  CHECK(v.accepted.dominance_holds);
  CHECK(v.rejected.available);
  CHECK(v.rejected.ks == 1.0);
  CHECK(v.rejected.dominance_holds);
  CHECK_THROWS_AS(validate_cdf_separation(two_clusters({0, 1}), papers), PreconditionError);
}

TEST_CASE("crossing cdfs break dominance") {
  AgentPapers papers{{"a0", {acc(1)}}, {"a1", {acc(100)}}, {"a2", {acc(20)}}, {"a3", {acc(30)}},
                     {"a4", {acc(40)}}};
  const auto r = label_anomalous(two_clusters({1, 1, 0, 0, 0}), papers);
  CHECK_FALSE(validate_cdf_separation(r, papers).accepted.dominance_holds);
  CHECK_FALSE(validate_cdf_separation(r, papers).rejected.available);
}

TEST_CASE("recovery scoring") {
  auto r = two_clusters({1, 1, 0, 0});
  r.anomalous_label = 1;
  const std::map<std::string, bool> truth{
      {"a0", true}, {"a1", false}, {"a2", false}, {"a3", true}, {"filtered", true}, {"other", false}};
  const auto s = score_recovery(r, truth);
  CHECK(s.n_evaluated == 4);
  CHECK(s.true_positives == 1);
  CHECK(s.false_positives == 1);
  CHECK(s.false_negatives == 1);
  CHECK(s.anomalous_not_clustered == 1);
  CHECK(s.precision == 0.5);
  CHECK(*s.recall == doctest::Approx(1.0 / 3.0));
  CHECK_FALSE(score_recovery(r, {}).precision.has_value());
}
