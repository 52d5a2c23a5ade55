#pragma once

// CSV/JSON emitters. Every CSV has a header row and prints reals with six
// significant digits; undefined values are empty cells.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "refaudit/anomaly.hpp"
#include "refaudit/diagnostics.hpp"
#include "refaudit/editor_metrics.hpp"
#include "refaudit/reviewer_metrics.hpp"
#include "refaudit/trend.hpp"

namespace refaudit {

std::string format_real(double value);
std::string format_real(const std::optional<double>& value);

// Value rounded to six significant digits, for JSON output.
nlohmann::json json_real(double value);

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

void write_editor_metrics_csv(const std::vector<EditorProfile>& profiles, std::ostream& out);
void write_reviewer_metrics_csv(const std::vector<ReviewerProfile>& profiles, std::ostream& out);
void write_bins_csv(const std::vector<BinSummary>& bins, std::ostream& out);
void write_declines_by_month_csv(const std::map<int, std::int64_t>& months, std::ostream& out);
void write_rdi_declines_csv(const std::vector<RdiDeclines>& rows, std::ostream& out);
void write_dormant_csv(const std::vector<DormantReviewer>& rows, std::ostream& out);
void write_cdf_csv(const ValidationReport& report, std::ostream& out);
void write_trends_csv(const TrendReport& report, std::ostream& out);
void write_profiles_csv(const TrendReport& report, std::ostream& out);

nlohmann::json to_json(const ClusterResult& result);
nlohmann::json to_json(const ValidationReport& report);
ClusterResult cluster_result_from_json(const nlohmann::json& j);

// Pretty-printed with a trailing newline.
void write_json(const nlohmann::json& j, std::ostream& out);

}  // namespace refaudit
