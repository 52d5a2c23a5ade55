#include "refaudit/cli.hpp"

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <set>
#include <optional>
#include <sstream>

#include "refaudit/anomaly.hpp"
#include "refaudit/diagnostics.hpp"
#include "refaudit/editor_metrics.hpp"
#include "refaudit/error.hpp"
#include "refaudit/features.hpp"
#include "refaudit/ledger.hpp"
#include "refaudit/manifest.hpp"
#include "refaudit/report.hpp"
#include "refaudit/reviewer_metrics.hpp"
#include "refaudit/seed.hpp"
#include "refaudit/stats.hpp"
#include "refaudit/synthgen.hpp"
#include "refaudit/trend.hpp"

namespace refaudit {

namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
  std::string out_dir = ".";
  int cutoff_year = 2013;
  int window_years = 3;
  std::string log_base = "e";
  bool count_declines = false;
  unsigned workers = 1;
};

LogBase parse_log_base(const std::string& text) {
  if (text == "e") return LogBase::natural();
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !(v > 0.0) || v == 1.0 || !std::isfinite(v)) {
    throw ConfigError("--log-base must be 'e' or a positive number other than 1, got '" + text + "'");
  }
  return LogBase{v};
}

spdlog::level::level_enum log_level_from_env() {
  const char* env = std::getenv("REFAUDIT_LOG");
  if (!env) return spdlog::level::warn;
  std::string v(env);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "error") return spdlog::level::err;
  if (v == "warn" || v == "warning") return spdlog::level::warn;
  if (v == "info") return spdlog::level::info;
  if (v == "debug") return spdlog::level::debug;
  return spdlog::level::warn;
}

// Per-invocation state: resolved paths, logger, manifest and warnings.
class Session {
 public:
  Session(const GlobalOptions& g, std::ostream& out, std::ostream& err) : g_(g), out_(out) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
    sink->set_pattern("refaudit %l: %v");
    log_ = std::make_shared<spdlog::logger>("refaudit", sink);
    log_->set_level(log_level_from_env());
  }

  std::ostream& out() { return out_; }
  spdlog::logger& log() { return *log_; }
  RunManifest& manifest() { return manifest_; }
  const GlobalOptions& globals() const { return g_; }

  CorpusSettings settings() const { return {g_.cutoff_year, g_.window_years}; }
  DiversityOptions diversity() const { return {g_.count_declines, parse_log_base(g_.log_base)}; }

  void begin(const std::string& subcommand) {
    manifest_.subcommand = subcommand;
    manifest_.config["analysis_cutoff_year"] = std::to_string(g_.cutoff_year);
    manifest_.config["citation_window_years"] = std::to_string(g_.window_years);
    manifest_.config["log_base"] = g_.log_base;
    manifest_.config["count_declines_in_diversity"] = g_.count_declines ? "true" : "false";
  }

  void set(const std::string& key, const std::string& value) { manifest_.config[key] = value; }

  fs::path output(const std::string& name) const {
    const fs::path p(name);
    return p.is_absolute() ? p : fs::path(g_.out_dir) / p;
  }

  void write(const std::string& name, const std::function<void(std::ostream&)>& emit) {
    const auto path = output(name);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open output file: " + path.string());
    emit(f);
    f.flush();
    if (!f) throw Error("failed writing output file: " + path.string());
    log_->info("wrote {}", path.string());
  }

  void record_input(const std::string& role, const std::string& path) {
    manifest_.input_digests[role + ":" + fs::path(path).filename().string()] = sha256_file(path);
  }

  Corpus load_corpus(const std::string& path) {
    auto corpus = ingest(path, settings());
    record_input("corpus", path);
    log_->info("ingested {} papers, {} events", corpus.papers().size(), corpus.events().size());
    return corpus;
  }

  void warn(const std::string& message) {
    warnings_.push_back(message);
    log_->warn("{}", message);
  }

  int finish() {
    write("manifest.json", [&](std::ostream& o) { write_json(manifest_.to_json(), o); });
    return warnings_.empty() ? 0 : 1;
  }

 private:
  GlobalOptions g_;
  std::ostream& out_;
  std::shared_ptr<spdlog::logger> log_;
  RunManifest manifest_;
  std::vector<std::string> warnings_;
};

// ---- metrics ------------------------------------------------------------

struct MetricSpec {
  const char* name;
  Role role;
  const char* default_bins;
  std::function<std::optional<double>(const EditorProfile&)> editor;
  std::function<std::optional<double>(const ReviewerProfile&)> reviewer;
};

const std::vector<MetricSpec>& metric_specs() {
  static const std::vector<MetricSpec> specs{
      {"MEAT", Role::Editor, "equal-width:12", [](const EditorProfile& p) { return p.meat; }, nullptr},
      {"RDI", Role::Editor, "tenths", [](const EditorProfile& p) { return p.rdi; }, nullptr},
      {"RADI", Role::Editor, "tenths", [](const EditorProfile& p) { return p.radi; }, nullptr},
      {"SRI", Role::Editor, "tenths", [](const EditorProfile& p) { return p.sri; }, nullptr},
      {"MRAT", Role::Reviewer, "equal-width:20", nullptr, [](const ReviewerProfile& p) { return p.mrat; }},
      {"MRSD", Role::Reviewer, "equal-width:10", nullptr, [](const ReviewerProfile& p) { return p.mrsd; }},
      {"TDI", Role::Reviewer, "tenths", nullptr, [](const ReviewerProfile& p) { return p.tdi; }},
      {"EDI", Role::Reviewer, "tenths", nullptr, [](const ReviewerProfile& p) { return p.edi; }},
      {"AR", Role::Reviewer, "tenths", nullptr, [](const ReviewerProfile& p) { return p.ar; }},
      {"MTD", Role::Reviewer, "equal-width:10", nullptr, [](const ReviewerProfile& p) { return p.mtd; }},
      {"DFI", Role::Reviewer, "tenths", nullptr, [](const ReviewerProfile& p) { return p.dfi; }},
  };
  return specs;
}

const MetricSpec& find_metric(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::toupper(c); });
  for (const auto& s : metric_specs()) {
    if (name == s.name) return s;
  }
  throw ConfigError("unknown metric '" + name + "' (expected one of MEAT, RDI, RADI, SRI, MRAT, MRSD, TDI, EDI, AR, MTD, DFI)");
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Profiles computed once per corpus and reused across figures.
struct ProfileCache {
  std::optional<std::vector<EditorProfile>> editors;
  std::optional<std::vector<ReviewerProfile>> reviewers;
  std::optional<AgentPapers> editor_papers;
  std::optional<AgentPapers> reviewer_papers;
};

void emit_figure(Session& s, const Corpus& corpus, ProfileCache& cache, const MetricSpec& spec,
                 const std::string& bins, bool all_agents) {
  const auto scheme = BinningScheme::parse(bins);
  AgentMetric metric;
  const AgentPapers* papers = nullptr;
  if (spec.role == Role::Editor) {
    if (!cache.editors) cache.editors = editor_profiles(corpus, s.diversity());
    if (!cache.editor_papers) cache.editor_papers = editor_papers(corpus);
    const auto profiles = all_agents ? *cache.editors : eligibility_filter(*cache.editors);
    for (const auto& p : profiles) {
      if (auto v = spec.editor(p)) metric[p.editor_id] = *v;
    }
    papers = &*cache.editor_papers;
  } else {
    if (!cache.reviewers) cache.reviewers = reviewer_profiles(corpus, s.diversity().log_base);
    if (!cache.reviewer_papers) cache.reviewer_papers = reviewer_papers(corpus);
    const auto profiles = all_agents ? *cache.reviewers : eligibility_filter(*cache.reviewers);
    for (const auto& p : profiles) {
      if (auto v = spec.reviewer(p)) metric[p.reviewer_id] = *v;
    }
    papers = &*cache.reviewer_papers;
  }
  const auto summary = mac_by_bin(metric, *papers, scheme);
  s.write("fig_" + lower(spec.name) + ".csv", [&](std::ostream& o) { write_bins_csv(summary, o); });
  s.set(std::string("bins.") + spec.name, scheme.to_string());
}

Date last_event_date(const Corpus& corpus) {
  Date last;
  bool any = false;
  for (const auto& e : corpus.events()) {
    if (!any || last < e.date) last = e.date;
    any = true;
  }
  return last;
}

void emit_diagnostics(Session& s, const Corpus& corpus, std::optional<std::string> now_text, int dormancy_years) {
  const auto now = now_text ? Date::parse(*now_text) : last_event_date(corpus);
  s.set("now", now.to_string());
  s.set("dormancy_years", std::to_string(dormancy_years));
  const auto months = declines_by_month(corpus);
  s.write("declines_by_month.csv", [&](std::ostream& o) { write_declines_by_month_csv(months, o); });
  const auto rdi = rdi_vs_declines(corpus, s.diversity());
  s.write("rdi_declines.csv", [&](std::ostream& o) { write_rdi_declines_csv(rdi, o); });
  const auto dormant = dormant_reviewers(corpus, now, dormancy_years);
  s.write("dormant.csv", [&](std::ostream& o) { write_dormant_csv(dormant, o); });
  if (rdi.size() >= 2) {
    std::vector<double> x, y;
    for (const auto& r : rdi) {
      x.push_back(r.rdi);
      y.push_back(static_cast<double>(r.n_declines_received));
    }
    s.out() << "spearman_rdi_declines," << format_real(stats::spearman(x, y)) << '\n';
  } else {
    s.out() << "spearman_rdi_declines,\n";
  }
}

struct DetectSettings {
  std::uint64_t seed = 0;
  int restarts = 50;
  int max_iter = 300;
  bool standardize = true;
  EligibilityRule eligibility;
};

DetectionRun run_detect(Session& s, const Corpus& corpus, Role role, const DetectSettings& d) {
  DetectOptions opts;
  opts.role = role;
  opts.kmeans.seed = derive_seed(d.seed, "detect/" + std::string(to_string(role)));
  opts.kmeans.n_restarts = d.restarts;
  opts.kmeans.max_iter = d.max_iter;
  opts.kmeans.workers = s.globals().workers;
  opts.standardize = d.standardize;
  opts.eligibility = d.eligibility;
  opts.diversity = s.diversity();
  auto run = detect(corpus, opts);
  run.clusters.seed = d.seed;
  const auto who = std::string(to_string(role));
  for (const auto& w : run.clusters.warnings) s.warn(who + ": " + w);
  const auto check = [&](const char* what, const CdfComparison& c) {
    if (c.available && !c.dominance_holds) {
      s.warn(who + ": " + what + " citation CDF of the anomalous cluster does not dominate as expected");
    }
  };
  check("accepted", run.validation.accepted);
  check("rejected", run.validation.rejected);
  const auto sizes = run.clusters.cluster_sizes();
  s.log().info("{}: clusters of {} and {}, anomalous label {}", who, sizes[0], sizes[1], run.clusters.anomalous_label);
  return run;
}

nlohmann::json clusters_document(const DetectionRun& run) {
  auto j = to_json(run.clusters);
  j["validation"] = to_json(run.validation);
  return j;
}

TrendReport run_profile(Session& s, const Corpus& corpus, const ClusterResult& clusters, const TrendParams& params,
                        std::size_t length) {
  if (clusters.role != Role::Reviewer) throw ConfigError("profile needs reviewer clusters, got editor clusters");
  std::vector<std::string> anomalous;
  for (std::size_t i = 0; i < clusters.agent_ids.size(); ++i) {
    if (clusters.is_anomalous(i)) anomalous.push_back(clusters.agent_ids[i]);
  }
  std::sort(anomalous.begin(), anomalous.end());
  auto report = profile_reviewers(corpus, anomalous, params, length);
  std::map<TrendCategory, std::size_t> counts;
  for (const auto& c : report.classified) ++counts[c.result.category];
  for (auto cat : {TrendCategory::ConstantDecline, TrendCategory::GoodThenDecline, TrendCategory::FluctuatingDecline,
                   TrendCategory::NoDecline}) {
    s.out() << "trend," << to_string(cat) << ',' << counts[cat] << '\n';
  }
  s.out() << "trend,Excluded," << report.excluded.size() << '\n';
  return report;
}

void record_trend_params(Session& s, const TrendParams& p, std::size_t length) {
  s.set("trend.min_length", std::to_string(p.min_length));
  s.set("trend.resample_length", std::to_string(length));
  s.set("trend.rank_threshold", format_real(p.rank_threshold));
  s.set("trend.good_ratio", format_real(p.good_ratio));
  s.set("trend.flat_fraction", format_real(p.flat_fraction));
  s.set("trend.fluctuation_cv", format_real(p.fluctuation_cv));
}

void record_detect_settings(Session& s, const DetectSettings& d) {
  s.set("restarts", std::to_string(d.restarts));
  s.set("max_iter", std::to_string(d.max_iter));
  s.set("standardize", d.standardize ? "true" : "false");
  s.set("min_assignments", std::to_string(d.eligibility.min_assignments));
  s.set("min_accepts", std::to_string(d.eligibility.min_accepts));
}

nlohmann::json recovery_json(const Recovery& r) {
  nlohmann::json j;
  j["n_evaluated"] = r.n_evaluated;
  j["true_positives"] = r.true_positives;
  j["false_positives"] = r.false_positives;
  j["false_negatives"] = r.false_negatives;
  j["anomalous_not_clustered"] = r.anomalous_not_clustered;
  j["precision"] = r.precision ? json_real(*r.precision) : nlohmann::json(nullptr);
  j["recall"] = r.recall ? json_real(*r.recall) : nlohmann::json(nullptr);
  return j;
}

void add_trend_options(CLI::App* cmd, TrendParams& p, std::size_t& length) {
  cmd->add_option("--min-length", p.min_length, "Shortest sequence that is classified")->capture_default_str();
  cmd->add_option("--resample", length, "Common length of category profiles")->capture_default_str()->check(
      CLI::PositiveNumber);
  cmd->add_option("--rank-threshold", p.rank_threshold, "Spearman at or below this is a steady decline")
      ->capture_default_str();
  cmd->add_option("--good-ratio", p.good_ratio, "First-third over last-third margin for a good start")
      ->capture_default_str();
  cmd->add_option("--flat-fraction", p.flat_fraction, "Early slope tolerance relative to the overall slope")
      ->capture_default_str();
  cmd->add_option("--fluctuation-cv", p.fluctuation_cv, "Residual CV above which a decline is fluctuating")
      ->capture_default_str();
}

void add_detect_options(CLI::App* cmd, DetectSettings& d) {
  cmd->add_option("--seed", d.seed, "Random seed")->capture_default_str();
  cmd->add_option("--restarts", d.restarts, "k-means restarts")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", d.max_iter, "Lloyd iterations per restart")->capture_default_str()->check(
      CLI::PositiveNumber);
  cmd->add_flag("--no-standardize{false}", d.standardize, "Cluster raw (imputed) features without z-scoring");
  cmd->add_option("--min-assignments", d.eligibility.min_assignments, "Eligibility: assignments before the cutoff")
      ->capture_default_str();
  cmd->add_option("--min-accepts", d.eligibility.min_accepts, "Eligibility: accepts before the cutoff")
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"refaudit: peer-review anomaly audit"};
  app.name("refaudit");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--out-dir", g.out_dir, "Directory for outputs and manifest.json")->capture_default_str();
  app.add_option("--cutoff-year", g.cutoff_year, "Eligibility counts only events before this year")
      ->capture_default_str();
  app.add_option("--window-years", g.window_years, "Citation window length after the publication year")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--log-base", g.log_base, "Logarithm base of diversity indices: e or a number")->capture_default_str();
  app.add_flag("--count-declines-in-diversity", g.count_declines, "Count declined assignments in RDI/RADI");
  app.add_option("--workers", g.workers, "Threads for k-means restarts")->capture_default_str()->check(
      CLI::PositiveNumber);

  std::string corpus_path;
  // One variable per subcommand: default_val assigns eagerly, so sharing
  // a variable would let the last registered default win.
  std::string editors_out, reviewers_out, clusters_out, trends_out, corpus_out;
  std::function<int(Session&)> action;

  auto* ingest_check = app.add_subcommand("ingest-check", "Validate a corpus and print a summary");
  ingest_check->add_option("corpus", corpus_path, "Corpus JSONL")->required();
  ingest_check->callback([&] {
    action = [&](Session& s) {
      s.begin("ingest-check");
      const auto corpus = s.load_corpus(corpus_path);
      std::set<std::string> editors, reviewers;
      std::size_t decided = 0;
      for (const auto& p : corpus.papers()) decided += p.is_decided();
      for (const auto& e : corpus.events()) {
        if (e.kind == EventKind::EditorAssigned) editors.insert(e.actor_id);
        if (e.kind == EventKind::ReviewerAssigned || e.kind == EventKind::SelfReviewAssigned) {
          reviewers.insert(e.actor_id);
        }
      }
      s.out() << "papers," << corpus.papers().size() << "\ndecided_papers," << decided << "\nevents,"
              << corpus.events().size() << "\nassignments," << corpus.assignments().size() << "\neditors,"
              << editors.size() << "\nreviewers," << reviewers.size() << '\n';
      return s.finish();
    };
  });

  auto* editor_cmd = app.add_subcommand("editor-metrics", "Per-editor metrics as CSV");
  editor_cmd->add_option("corpus", corpus_path, "Corpus JSONL")->required();
  editor_cmd->add_option("--out", editors_out, "Output CSV")->default_val("editors.csv");
  editor_cmd->callback([&] {
    action = [&](Session& s) {
      s.begin("editor-metrics");
      const auto corpus = s.load_corpus(corpus_path);
      const auto profiles = editor_profiles(corpus, s.diversity());
      s.write(editors_out, [&](std::ostream& o) { write_editor_metrics_csv(profiles, o); });
      return s.finish();
    };
  });

  auto* reviewer_cmd = app.add_subcommand("reviewer-metrics", "Per-reviewer metrics as CSV");
  reviewer_cmd->add_option("corpus", corpus_path, "Corpus JSONL")->required();
  reviewer_cmd->add_option("--out", reviewers_out, "Output CSV")->default_val("reviewers.csv");
  reviewer_cmd->callback([&] {
    action = [&](Session& s) {
      s.begin("reviewer-metrics");
      const auto corpus = s.load_corpus(corpus_path);
      const auto profiles = reviewer_profiles(corpus, s.diversity().log_base);
      s.write(reviewers_out, [&](std::ostream& o) { write_reviewer_metrics_csv(profiles, o); });
      return s.finish();
    };
  });

  std::string metric_name;
  std::string bins;
  bool all_agents = false;
  auto* figures = app.add_subcommand("figures", "Median average citation per metric bin");
  figures->add_option("corpus", corpus_path, "Corpus JSONL")->required();
  figures->add_option("--metric", metric_name, "Metric name, or 'all'")->required();
  figures->add_option("--bins", bins,
                      "equal-width:N[:LO:HI] | tenths[:LO:HI] | equal-count:N (default depends on the metric)");
  figures->add_flag("--all-agents", all_agents, "Bin every agent, not only those passing the eligibility filter");
  figures->callback([&] {
    action = [&](Session& s) {
      s.begin("figures");
      s.set("all_agents", all_agents ? "true" : "false");
      const auto corpus = s.load_corpus(corpus_path);
      ProfileCache cache;
      if (lower(metric_name) == "all") {
        if (!bins.empty()) throw ConfigError("--bins cannot be combined with --metric all");
        for (const auto& spec : metric_specs()) emit_figure(s, corpus, cache, spec, spec.default_bins, all_agents);
      } else {
        const auto& spec = find_metric(metric_name);
        emit_figure(s, corpus, cache, spec, bins.empty() ? spec.default_bins : bins, all_agents);
      }
      return s.finish();
    };
  });

  std::string now_text;
  int dormancy_years = 2;
  auto* diagnostics = app.add_subcommand("diagnostics", "Declines by month, RDI vs declines, dormant reviewers");
  diagnostics->add_option("corpus", corpus_path, "Corpus JSONL")->required();
  diagnostics->add_option("--now", now_text, "Reference date for dormancy (default: last event date)");
  diagnostics->add_option("--dormancy-years", dormancy_years, "Years without assignment before dormancy")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  diagnostics->callback([&] {
    action = [&](Session& s) {
      s.begin("diagnostics");
      const auto corpus = s.load_corpus(corpus_path);
      emit_diagnostics(s, corpus, now_text.empty() ? std::nullopt : std::optional(now_text), dormancy_years);
      return s.finish();
    };
  });

  std::string role_name = "editor";
  DetectSettings detect_settings;
  auto* detect_cmd = app.add_subcommand("detect", "Two-cluster anomaly detection for one role");
  detect_cmd->add_option("corpus", corpus_path, "Corpus JSONL")->required();
  detect_cmd->add_option("--role", role_name, "editor or reviewer")->capture_default_str()->check(
      CLI::IsMember({"editor", "reviewer"}));
  add_detect_options(detect_cmd, detect_settings);
  detect_cmd->add_option("--out", clusters_out, "Cluster JSON")->default_val("clusters.json");
  detect_cmd->callback([&] {
    action = [&](Session& s) {
      s.begin("detect");
      const auto role = *parse_role(role_name);
      s.set("role", role_name);
      record_detect_settings(s, detect_settings);
      s.manifest().seed = detect_settings.seed;
      const auto corpus = s.load_corpus(corpus_path);
      const auto result = run_detect(s, corpus, role, detect_settings);
      s.write(clusters_out, [&](std::ostream& o) { write_json(clusters_document(result), o); });
      s.write("cdf_" + role_name + ".csv", [&](std::ostream& o) { write_cdf_csv(result.validation, o); });
      return s.finish();
    };
  });

  std::string clusters_path;
  std::string profiles_name;
  TrendParams trend_params;
  std::size_t profile_length = 20;
  auto* profile_cmd = app.add_subcommand("profile", "Citation-trend categories of anomalous reviewers");
  profile_cmd->add_option("corpus", corpus_path, "Corpus JSONL")->required();
  profile_cmd->add_option("--clusters", clusters_path, "Reviewer clusters.json from detect")->required();
  profile_cmd->add_option("--out", trends_out, "Per-reviewer trend CSV")->default_val("trends.csv");
  profile_cmd->add_option("--profiles", profiles_name, "Category mean profiles CSV")->default_val("profiles.csv");
  add_trend_options(profile_cmd, trend_params, profile_length);
  profile_cmd->callback([&] {
    action = [&](Session& s) {
      s.begin("profile");
      record_trend_params(s, trend_params, profile_length);
      const auto corpus = s.load_corpus(corpus_path);
      std::ifstream in(clusters_path);
      if (!in) throw Error("file not found or unreadable: " + clusters_path);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("clusters file is not valid JSON: ") + e.what());
      }
      s.record_input("clusters", clusters_path);
      const auto clusters = cluster_result_from_json(j);
      const auto report = run_profile(s, corpus, clusters, trend_params, profile_length);
      s.write(trends_out, [&](std::ostream& o) { write_trends_csv(report, o); });
      s.write(profiles_name, [&](std::ostream& o) { write_profiles_csv(report, o); });
      return s.finish();
    };
  });

  std::string config_path;
  std::string truth_name;
  std::optional<std::uint64_t> seed_override;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus with ground truth");
  synth->add_option("--config", config_path, "Generator config (TOML); defaults when omitted");
  synth->add_option("--out", corpus_out, "Corpus JSONL")->default_val("corpus.jsonl");
  synth->add_option("--truth", truth_name, "Ground-truth CSV")->default_val("truth.csv");
  synth->add_option("--seed", seed_override, "Overrides the config seed");
  synth->callback([&] {
    action = [&](Session& s) {
      s.begin("synth");
      GeneratorConfig config;
      if (!config_path.empty()) {
        config = load_generator_config(config_path);
        s.record_input("config", config_path);
      }
      if (seed_override) config.seed = *seed_override;
      config.settings = s.settings();
      config.validate();
      s.manifest().seed = config.seed;
      const auto synthetic = generate(config);
      s.write(corpus_out, [&](std::ostream& o) { write_jsonl(synthetic.corpus, o); });
      s.write(truth_name, [&](std::ostream& o) { write_truth_csv(synthetic.truth, o); });
      s.out() << "papers," << synthetic.corpus.papers().size() << "\nanomalous_editors,"
              << synthetic.truth.anomalous_editors() << "\nanomalous_reviewers," << synthetic.truth.anomalous_reviewers()
              << '\n';
      return s.finish();
    };
  });

  std::string synth_config;
  std::string pipeline_corpus;
  std::string pipeline_truth;
  auto* pipeline = app.add_subcommand("pipeline", "Synthesize or ingest, then metrics, detection, trends, validation");
  auto* synth_opt = pipeline->add_option("--synth-config", synth_config, "Generator config (TOML)");
  auto* corpus_opt = pipeline->add_option("--corpus", pipeline_corpus, "Existing corpus JSONL");
  synth_opt->excludes(corpus_opt);
  pipeline->add_option("--truth", pipeline_truth, "Ground-truth CSV for an ingested corpus")->needs(corpus_opt);
  add_detect_options(pipeline, detect_settings);
  add_trend_options(pipeline, trend_params, profile_length);
  pipeline->callback([&] {
    action = [&](Session& s) {
      if (synth_config.empty() && pipeline_corpus.empty()) throw ConfigError("pipeline needs --synth-config or --corpus");
      s.begin("pipeline");
      record_detect_settings(s, detect_settings);
      record_trend_params(s, trend_params, profile_length);
      s.manifest().seed = detect_settings.seed;

      Corpus corpus;
      std::optional<GroundTruth> truth;
      if (!synth_config.empty()) {
        auto config = load_generator_config(synth_config);
        s.record_input("config", synth_config);
        config.seed = derive_seed(detect_settings.seed, "synthgen");
        config.settings = s.settings();
        auto synthetic = generate(config);
        s.write("corpus.jsonl", [&](std::ostream& o) { write_jsonl(synthetic.corpus, o); });
        s.write("truth.csv", [&](std::ostream& o) { write_truth_csv(synthetic.truth, o); });
        corpus = std::move(synthetic.corpus);
        truth = std::move(synthetic.truth);
      } else {
        corpus = s.load_corpus(pipeline_corpus);
        if (!pipeline_truth.empty()) {
          std::ifstream in(pipeline_truth);
          if (!in) throw Error("file not found or unreadable: " + pipeline_truth);
          truth = read_truth_csv(in);
          s.record_input("truth", pipeline_truth);
        }
      }

      const auto editors = editor_profiles(corpus, s.diversity());
      s.write("editors.csv", [&](std::ostream& o) { write_editor_metrics_csv(editors, o); });
      const auto reviewers = reviewer_profiles(corpus, s.diversity().log_base);
      s.write("reviewers.csv", [&](std::ostream& o) { write_reviewer_metrics_csv(reviewers, o); });
      ProfileCache cache{editors, reviewers, std::nullopt, std::nullopt};
      for (const auto& spec : metric_specs()) emit_figure(s, corpus, cache, spec, spec.default_bins, false);
      emit_diagnostics(s, corpus, std::nullopt, 2);

      nlohmann::json validation;
      std::optional<ClusterResult> reviewer_clusters;
      for (auto role : {Role::Editor, Role::Reviewer}) {
        const auto name = std::string(to_string(role));
        const auto result = run_detect(s, corpus, role, detect_settings);
        s.write("clusters_" + name + ".json", [&](std::ostream& o) { write_json(clusters_document(result), o); });
        s.write("cdf_" + name + ".csv", [&](std::ostream& o) { write_cdf_csv(result.validation, o); });
        nlohmann::json v;
        v["cluster_sizes"] = result.clusters.cluster_sizes();
        v["anomalous_label"] = result.clusters.anomalous_label;
        v["cdf"] = to_json(result.validation);
        v["warnings"] = result.clusters.warnings;
        if (truth) {
          const auto rec = score_recovery(result.clusters, role == Role::Editor ? truth->editors : truth->reviewers);
          v["recovery"] = recovery_json(rec);
          s.out() << name << "_precision," << format_real(rec.precision) << '\n'
                  << name << "_recall," << format_real(rec.recall) << '\n';
        }
        validation[name] = v;
        if (role == Role::Reviewer) reviewer_clusters = result.clusters;
      }
      const auto report = run_profile(s, corpus, *reviewer_clusters, trend_params, profile_length);
      s.write("trends.csv", [&](std::ostream& o) { write_trends_csv(report, o); });
      s.write("profiles.csv", [&](std::ostream& o) { write_profiles_csv(report, o); });
      s.write("validation.json", [&](std::ostream& o) { write_json(validation, o); });
      return s.finish();
    };
  });

  std::vector<std::string> argv_storage{"refaudit"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    Session session(g, out, err);
    parse_log_base(g.log_base);
    return action(session);
  } catch (const Error& e) {
    err << "refaudit: error: " << e.what() << '\n';
    return 2;
  } catch (const fs::filesystem_error& e) {
    err << "refaudit: error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "refaudit: error: " << e.what() << '\n';
    return 2;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace refaudit
