#include "refaudit/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "refaudit/error.hpp"

namespace refaudit {

std::string format_real(double value) {
  if (value == 0.0) return "0";  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string format_real(const std::optional<double>& value) { return value ? format_real(*value) : std::string(); }

nlohmann::json json_real(double value) {
  if (!std::isfinite(value)) return nullptr;
  return std::strtod(format_real(value).c_str(), nullptr);
}

namespace {

std::string quote(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string str(std::int64_t v) { return std::to_string(v); }

}  // namespace

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << quote(cells[i]);
  }
  out << '\n';
}

void write_editor_metrics_csv(const std::vector<EditorProfile>& profiles, std::ostream& out) {
  write_csv_row(out, {"editor_id", "n_assignments", "n_self_reviewed", "MEAT", "RDI", "RADI", "SRI",
                      "n_declines_received", "assignments_before_cutoff", "accepts_before_cutoff"});
  for (const auto& p : profiles) {
    write_csv_row(out, {p.editor_id, str(p.n_assignments), str(p.n_self_reviewed), format_real(p.meat),
                        format_real(p.rdi), format_real(p.radi), format_real(p.sri), str(p.n_declines_received),
                        str(p.assignments_before_cutoff), str(p.accepts_before_cutoff)});
  }
}

void write_reviewer_metrics_csv(const std::vector<ReviewerProfile>& profiles, std::ostream& out) {
  write_csv_row(out, {"reviewer_id", "n_assignments", "n_declines", "n_reports", "n_pending", "n_accept", "n_reject",
                      "MRAT", "MRSD", "TDI", "EDI", "AR", "MTD", "DFI", "is_editor_self_review",
                      "assignments_before_cutoff", "accepts_before_cutoff"});
  for (const auto& p : profiles) {
    write_csv_row(out, {p.reviewer_id, str(p.n_assignments), str(p.n_declines), str(p.n_reports), str(p.n_pending),
                        str(p.n_accept), str(p.n_reject), format_real(p.mrat), format_real(p.mrsd), format_real(p.tdi),
                        format_real(p.edi), format_real(p.ar), format_real(p.mtd), format_real(p.dfi),
                        p.is_editor_self_review ? "true" : "false", str(p.assignments_before_cutoff),
                        str(p.accepts_before_cutoff)});
  }
}

void write_bins_csv(const std::vector<BinSummary>& bins, std::ostream& out) {
  write_csv_row(out, {"bin_index", "bin_lower", "bin_upper", "n_agents", "mac_accepted", "mac_rejected"});
  for (const auto& b : bins) {
    write_csv_row(out, {std::to_string(b.bin_index), format_real(b.bin_lower), format_real(b.bin_upper), str(b.n_agents),
                        format_real(b.mac_accepted), format_real(b.mac_rejected)});
  }
}

void write_declines_by_month_csv(const std::map<int, std::int64_t>& months, std::ostream& out) {
  write_csv_row(out, {"month", "n_declines"});
  for (const auto& [m, n] : months) write_csv_row(out, {std::to_string(m), str(n)});
}

void write_rdi_declines_csv(const std::vector<RdiDeclines>& rows, std::ostream& out) {
  write_csv_row(out, {"editor_id", "RDI", "n_declines_received"});
  for (const auto& r : rows) write_csv_row(out, {r.editor_id, format_real(r.rdi), str(r.n_declines_received)});
}

void write_dormant_csv(const std::vector<DormantReviewer>& rows, std::ostream& out) {
  write_csv_row(out, {"reviewer_id", "last_assignment", "agreed_without_report"});
  for (const auto& r : rows) {
    write_csv_row(out, {r.reviewer_id, r.last_assignment.to_string(), r.agreed_without_report ? "true" : "false"});
  }
}

void write_cdf_csv(const ValidationReport& report, std::ostream& out) {
  write_csv_row(out, {"decision", "group", "citations", "cdf"});
  auto emit = [&](const char* decision, const CdfComparison& c) {
    for (const auto& [x, f] : c.anomalous_cdf) write_csv_row(out, {decision, "anomalous", format_real(x), format_real(f)});
    for (const auto& [x, f] : c.normal_cdf) write_csv_row(out, {decision, "normal", format_real(x), format_real(f)});
  };
  emit("accepted", report.accepted);
  emit("rejected", report.rejected);
}

void write_trends_csv(const TrendReport& report, std::ostream& out) {
  write_csv_row(out, {"reviewer_id", "category", "length", "slope", "spearman", "residual_cv", "note"});
  for (const auto& c : report.classified) {
    const auto& s = c.result.statistics;
    write_csv_row(out, {c.sequence.reviewer_id, std::string(to_string(c.result.category)),
                        std::to_string(c.sequence.values.size()), format_real(s.slope), format_real(s.spearman),
                        format_real(s.residual_cv), ""});
  }
  for (const auto& e : report.excluded) write_csv_row(out, {e.reviewer_id, "Excluded", "", "", "", "", e.reason});
}

void write_profiles_csv(const TrendReport& report, std::ostream& out) {
  write_csv_row(out, {"category", "position", "mean_citations", "n_reviewers"});
  std::map<TrendCategory, std::size_t> counts;
  for (const auto& c : report.classified) ++counts[c.result.category];
  for (const auto& [category, profile] : report.profiles) {
    for (std::size_t i = 0; i < profile.size(); ++i) {
      write_csv_row(out, {std::string(to_string(category)), std::to_string(i), format_real(profile[i]),
                          std::to_string(counts[category])});
    }
  }
}

nlohmann::json to_json(const ClusterResult& r) {
  nlohmann::json j;
  j["role"] = std::string(to_string(r.role));
  j["feature_names"] = r.feature_names;
  j["anomalous_label"] = r.anomalous_label;
  j["label_source"] = r.label_source == LabelSource::ClusterSize ? "cluster_size" : "citation";
  j["objective"] = json_real(r.objective);
  j["n_iterations"] = r.n_iterations;
  j["seed"] = r.seed;
  const auto sizes = r.cluster_sizes();
  j["cluster_sizes"] = sizes;
  auto centroids = nlohmann::json::array();
  for (std::size_t i = 0; i < r.centroids.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (double v : r.centroids.row(i)) row.push_back(json_real(v));
    centroids.push_back(row);
  }
  j["centroids"] = centroids;
  auto agents = nlohmann::json::array();
  for (std::size_t i = 0; i < r.agent_ids.size(); ++i) {
    agents.push_back({{"agent_id", r.agent_ids[i]}, {"cluster", r.assignments[i]}, {"anomalous", r.is_anomalous(i)}});
  }
  j["agents"] = agents;
  j["warnings"] = r.warnings;
  return j;
}

nlohmann::json to_json(const ValidationReport& report) {
  auto one = [](const CdfComparison& c) {
    nlohmann::json j;
    j["available"] = c.available;
    j["n_anomalous"] = c.anomalous.size();
    j["n_normal"] = c.normal.size();
    j["ks"] = json_real(c.ks);
    j["dominance_holds"] = c.dominance_holds;
    return j;
  };
  return {{"accepted", one(report.accepted)}, {"rejected", one(report.rejected)}};
}

ClusterResult cluster_result_from_json(const nlohmann::json& j) {
  try {
    ClusterResult r;
    const auto role = parse_role(j.at("role").get<std::string>());
    if (!role) throw ValidationError("clusters file: unknown role");
    r.role = *role;
    r.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    r.anomalous_label = j.at("anomalous_label").get<int>();
    r.label_source = j.value("label_source", "cluster_size") == "citation" ? LabelSource::Citation : LabelSource::ClusterSize;
    r.objective = j.value("objective", 0.0);
    r.n_iterations = j.value("n_iterations", 0);
    r.seed = j.value("seed", std::uint64_t{0});
    std::vector<std::vector<double>> rows;
    for (const auto& row : j.at("centroids")) {
      std::vector<double> values;
      for (const auto& v : row) values.push_back(v.is_null() ? 0.0 : v.get<double>());
      rows.push_back(std::move(values));
    }
    if (!rows.empty()) r.centroids = Matrix::from_rows(rows);
    for (const auto& a : j.at("agents")) {
      r.agent_ids.push_back(a.at("agent_id").get<std::string>());
      const int c = a.at("cluster").get<int>();
      if (c < 0 || c > 1) throw ValidationError("clusters file: cluster must be 0 or 1");
      r.assignments.push_back(c);
    }
    if (j.contains("warnings")) r.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (r.anomalous_label < 0 || r.anomalous_label > 1) throw ValidationError("clusters file: anomalous_label must be 0 or 1");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("clusters file: ") + e.what());
  }
}

void write_json(const nlohmann::json& j, std::ostream& out) { out << j.dump(2) << '\n'; }

}  // namespace refaudit
