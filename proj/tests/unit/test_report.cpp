#include <doctest.h>

#include <sstream>

#include "refaudit/manifest.hpp"
#include "refaudit/report.hpp"

using namespace refaudit;

TEST_CASE("real formatting") {
  CHECK(format_real(0.0) == "0");
  CHECK(format_real(-0.0) == "0");
  CHECK(format_real(1.0 / 3.0) == "0.333333");
  CHECK(format_real(1234567.0) == "1.23457e+06");
  CHECK(format_real(std::optional<double>{}).empty());
  CHECK(json_real(1.0 / 3.0).get<double>() == 0.333333);
  CHECK(json_real(std::nan("")).is_null());
}

TEST_CASE("csv quoting") {
  std::ostringstream out;
  write_csv_row(out, {"plain", "a,b", "say \"hi\"", ""});
  CHECK(out.str() == "plain,\"a,b\",\"say \"\"hi\"\"\",\n");
}

TEST_CASE("editor csv leaves undefined metrics blank") {
  EditorProfile p;
  p.editor_id = "E1";
  p.n_assignments = 1;
  p.rdi = 0.0;
  std::ostringstream out;
  write_editor_metrics_csv({p}, out);
  CHECK(out.str() ==
        "editor_id,n_assignments,n_self_reviewed,MEAT,RDI,RADI,SRI,n_declines_received,assignments_before_cutoff,"
        "accepts_before_cutoff\nE1,1,0,,0,,,0,0,0\n");
}

TEST_CASE("cluster json round trip") {
  ClusterResult r;
  r.role = Role::Reviewer;
  r.agent_ids = {"R1", "R2", "R3"};
  r.assignments = {0, 1, 1};
  r.feature_names = {"AR"};
  r.centroids = Matrix::from_rows({{-1.0}, {0.5}});
  r.objective = 0.25;
  r.anomalous_label = 0;
  r.n_iterations = 3;
  r.seed = 99;
  r.warnings = {"note"};
  const auto j = to_json(r);
  CHECK(j.at("role") == "reviewer");
  CHECK(j.at("cluster_sizes") == nlohmann::json::array({1, 2}));
  CHECK(j.at("agents").at(0).at("anomalous") == true);
  const auto back = cluster_result_from_json(j);
  CHECK(back.agent_ids == r.agent_ids);
  CHECK(back.assignments == r.assignments);
  CHECK(back.anomalous_label == 0);
  CHECK(back.role == Role::Reviewer);
  CHECK(back.centroids == r.centroids);
}

TEST_CASE("manifest digests") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  RunManifest m;
  m.subcommand = "detect";
  m.seed = 7;
  const auto j = m.to_json();
  CHECK(j.at("subcommand") == "detect");
  CHECK(j.at("seed") == 7);
  CHECK(j.at("tool_version") == kToolVersion);
}
