#include "refaudit/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "refaudit/error.hpp"
#include "refaudit/seed.hpp"

namespace refaudit {

namespace {

using Rng = std::mt19937_64;

// ---- config -------------------------------------------------------------

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void check_probability(double p, const std::string& name) {
  require(std::isfinite(p) && p >= 0.0 && p <= 1.0, name + " must lie in [0, 1]");
}

void check_positive(double v, const std::string& name) {
  require(std::isfinite(v) && v > 0.0, name + " must be positive and finite");
}

void check_non_negative(double v, const std::string& name) {
  require(std::isfinite(v) && v >= 0.0, name + " must be non-negative and finite");
}

void validate_editor(const EditorBehavior& e, const std::string& cls) {
  const auto p = "editors." + cls + ".";
  check_positive(e.assignment_rate, p + "assignment_rate");
  require(e.reviewer_pool_size >= 0, p + "reviewer_pool_size must be non-negative");
  check_probability(e.cross_class_reviewer_probability, p + "cross_class_reviewer_probability");
  check_probability(e.self_review_probability, p + "self_review_probability");
  check_probability(e.self_review_acceptance_probability, p + "self_review_acceptance_probability");
  check_positive(e.self_review_delay_median_days, p + "self_review_delay_median_days");
  require(e.author_pool_size >= 0, p + "author_pool_size must be non-negative");
  require(e.keyword_pool_size >= 0, p + "keyword_pool_size must be non-negative");
  check_positive(e.decision_delay_median_days, p + "decision_delay_median_days");
}

void validate_reviewer(const ReviewerBehavior& r, const std::string& cls) {
  const auto p = "reviewers." + cls + ".";
  require(!r.report_delay_median_days.empty(), p + "report_delay_median_days must not be empty");
  for (double m : r.report_delay_median_days) check_positive(m, p + "report_delay_median_days");
  check_non_negative(r.report_delay_sigma, p + "report_delay_sigma");
  require(!r.acceptance_probability.empty(), p + "acceptance_probability must not be empty");
  for (double a : r.acceptance_probability) check_probability(a, p + "acceptance_probability");
  check_probability(r.decline_probability, p + "decline_probability");
  check_positive(r.decline_delay_median_days, p + "decline_delay_median_days");
  check_non_negative(r.decline_delay_sigma, p + "decline_delay_sigma");
  check_probability(r.no_report_probability, p + "no_report_probability");
}

}  // namespace

void GeneratorConfig::validate() const {
  require(n_editors >= 0 && n_reviewers >= 0 && n_papers >= 0, "agent and paper counts must be non-negative");
  check_probability(anomalous_editor_fraction, "anomalous_editor_fraction");
  check_probability(anomalous_reviewer_fraction, "anomalous_reviewer_fraction");
  if (n_papers > 0) {
    require(n_editors >= 1, "n_papers > 0 needs at least one editor");
    require(n_reviewers >= 1, "n_papers > 0 needs at least one reviewer");
  }
  require(time_span_years >= 1, "time_span_years must be at least 1");
  require(start_year >= 1900 && start_year + time_span_years <= 9000, "start_year out of range");
  require(settings.citation_window_years >= 1, "citation_window_years must be at least 1");
  validate_editor(normal_editor, "normal");
  validate_editor(anomalous_editor, "anomalous");
  validate_reviewer(normal_reviewer, "normal");
  validate_reviewer(anomalous_reviewer, "anomalous");

  check_non_negative(papers.mean_extra_authors, "papers.mean_extra_authors");
  require(papers.author_population >= 1, "papers.author_population must be positive");
  require(papers.vocabulary_size >= 1, "papers.vocabulary_size must be positive");
  require(papers.keywords_per_paper >= 1 && papers.keywords_per_paper <= papers.vocabulary_size,
          "papers.keywords_per_paper must lie in [1, vocabulary_size]");
  require(papers.min_reviewers >= 1 && papers.max_reviewers >= papers.min_reviewers,
          "papers.min_reviewers must be >= 1 and <= max_reviewers");
  require(papers.max_declines_per_slot >= 0, "papers.max_declines_per_slot must be non-negative");
  check_probability(papers.withdrawn_probability, "papers.withdrawn_probability");
  check_non_negative(papers.seasonal_decline_boost, "papers.seasonal_decline_boost");
  require(anomalous_editor.author_pool_size <= papers.author_population &&
              normal_editor.author_pool_size <= papers.author_population,
          "editor author_pool_size exceeds papers.author_population");
  require(anomalous_editor.keyword_pool_size <= papers.vocabulary_size &&
              normal_editor.keyword_pool_size <= papers.vocabulary_size,
          "editor keyword_pool_size exceeds papers.vocabulary_size");

  for (double m : {citations.accepted_mean_normal, citations.accepted_mean_anomalous, citations.rejected_mean_normal,
                   citations.rejected_mean_anomalous}) {
    check_non_negative(m, "citation means");
  }
  check_positive(citations.dispersion, "citations.dispersion");
  check_probability(citations.external_publication_probability, "citations.external_publication_probability");
  require(citations.post_window_years >= 0, "citations.post_window_years must be non-negative");
  if (!citations.anomalous_trend_weights.empty()) {
    require(citations.anomalous_trend_weights.size() == 3, "citations.anomalous_trend_weights needs three entries");
    double total = 0.0;
    for (double w : citations.anomalous_trend_weights) {
      check_non_negative(w, "citations.anomalous_trend_weights");
      total += w;
    }
    require(total > 0.0, "citations.anomalous_trend_weights must not all be zero");
  }
}

namespace {

using Setter = std::function<void(GeneratorConfig&, const ConfigValue&, const std::string&)>;

double as_double(const ConfigValue& v, const std::string& key) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  throw ConfigError(key + ": expected a number");
}

std::int64_t as_int(const ConfigValue& v, const std::string& key) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  throw ConfigError(key + ": expected an integer");
}

int as_int32(const ConfigValue& v, const std::string& key) {
  const auto i = as_int(v, key);
  if (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max()) {
    throw ConfigError(key + ": integer out of range");
  }
  return static_cast<int>(i);
}

std::vector<double> as_list(const ConfigValue& v, const std::string& key) {
  if (const auto* l = std::get_if<std::vector<double>>(&v)) return *l;
  return {as_double(v, key)};
}

template <typename Member>
Setter set_double(Member member) {
  return [member](GeneratorConfig& c, const ConfigValue& v, const std::string& k) { member(c) = as_double(v, k); };
}
template <typename Member>
Setter set_int(Member member) {
  return [member](GeneratorConfig& c, const ConfigValue& v, const std::string& k) { member(c) = as_int32(v, k); };
}
template <typename Member>
Setter set_list(Member member) {
  return [member](GeneratorConfig& c, const ConfigValue& v, const std::string& k) { member(c) = as_list(v, k); };
}

void add_editor_keys(std::map<std::string, Setter>& keys, const std::string& cls,
                     EditorBehavior& (*pick)(GeneratorConfig&)) {
  const auto p = "editors." + cls + ".";
  keys[p + "assignment_rate"] = set_double([pick](GeneratorConfig& c) -> double& { return pick(c).assignment_rate; });
  keys[p + "reviewer_pool_size"] = set_int([pick](GeneratorConfig& c) -> int& { return pick(c).reviewer_pool_size; });
  keys[p + "cross_class_reviewer_probability"] =
      set_double([pick](GeneratorConfig& c) -> double& { return pick(c).cross_class_reviewer_probability; });
  keys[p + "self_review_probability"] =
      set_double([pick](GeneratorConfig& c) -> double& { return pick(c).self_review_probability; });
  keys[p + "self_review_acceptance_probability"] =
      set_double([pick](GeneratorConfig& c) -> double& { return pick(c).self_review_acceptance_probability; });
  keys[p + "self_review_delay_median_days"] =
      set_double([pick](GeneratorConfig& c) -> double& { return pick(c).self_review_delay_median_days; });
  keys[p + "author_pool_size"] = set_int([pick](GeneratorConfig& c) -> int& { return pick(c).author_pool_size; });
  keys[p + "keyword_pool_size"] = set_int([pick](GeneratorConfig& c) -> int& { return pick(c).keyword_pool_size; });
  keys[p + "decision_delay_median_days"] =
      set_double([pick](GeneratorConfig& c) -> double& { return pick(c).decision_delay_median_days; });
}

void add_reviewer_keys(std::map<std::string, Setter>& keys, const std::string& cls,
                       ReviewerBehavior& (*pick)(GeneratorConfig&)) {
  const auto p = "reviewers." + cls + ".";
  keys[p + "report_delay_median_days"] =
      set_list([pick](GeneratorConfig& c) -> std::vector<double>& { return pick(c).report_delay_median_days; });
  keys[p + "report_delay_sigma"] = set_double([pick](GeneratorConfig& c) -> double& { return pick(c).report_delay_sigma; });
  keys[p + "acceptance_probability"] =
      set_list([pick](GeneratorConfig& c) -> std::vector<double>& { return pick(c).acceptance_probability; });
  keys[p + "decline_probability"] =
      set_double([pick](GeneratorConfig& c) -> double& { return pick(c).decline_probability; });
  keys[p + "decline_delay_median_days"] =
      set_double([pick](GeneratorConfig& c) -> double& { return pick(c).decline_delay_median_days; });
  keys[p + "decline_delay_sigma"] =
      set_double([pick](GeneratorConfig& c) -> double& { return pick(c).decline_delay_sigma; });
  keys[p + "no_report_probability"] =
      set_double([pick](GeneratorConfig& c) -> double& { return pick(c).no_report_probability; });
}

const std::map<std::string, Setter>& config_keys() {
  static const auto keys = [] {
    std::map<std::string, Setter> k;
    k["seed"] = [](GeneratorConfig& c, const ConfigValue& v, const std::string& key) {
      const auto s = as_int(v, key);
      if (s < 0) throw ConfigError(key + ": must be non-negative");
      c.seed = static_cast<std::uint64_t>(s);
    };
    k["n_editors"] = set_int([](GeneratorConfig& c) -> int& { return c.n_editors; });
    k["n_reviewers"] = set_int([](GeneratorConfig& c) -> int& { return c.n_reviewers; });
    k["n_papers"] = set_int([](GeneratorConfig& c) -> int& { return c.n_papers; });
    k["anomalous_editor_fraction"] = set_double([](GeneratorConfig& c) -> double& { return c.anomalous_editor_fraction; });
    k["anomalous_reviewer_fraction"] =
        set_double([](GeneratorConfig& c) -> double& { return c.anomalous_reviewer_fraction; });
    k["start_year"] = set_int([](GeneratorConfig& c) -> int& { return c.start_year; });
    k["time_span_years"] = set_int([](GeneratorConfig& c) -> int& { return c.time_span_years; });
    k["analysis_cutoff_year"] = set_int([](GeneratorConfig& c) -> int& { return c.settings.analysis_cutoff_year; });
    k["citation_window_years"] = set_int([](GeneratorConfig& c) -> int& { return c.settings.citation_window_years; });

    add_editor_keys(k, "normal", [](GeneratorConfig& c) -> EditorBehavior& { return c.normal_editor; });
    add_editor_keys(k, "anomalous", [](GeneratorConfig& c) -> EditorBehavior& { return c.anomalous_editor; });
    add_reviewer_keys(k, "normal", [](GeneratorConfig& c) -> ReviewerBehavior& { return c.normal_reviewer; });
    add_reviewer_keys(k, "anomalous", [](GeneratorConfig& c) -> ReviewerBehavior& { return c.anomalous_reviewer; });

    k["papers.mean_extra_authors"] = set_double([](GeneratorConfig& c) -> double& { return c.papers.mean_extra_authors; });
    k["papers.author_population"] = set_int([](GeneratorConfig& c) -> int& { return c.papers.author_population; });
    k["papers.vocabulary_size"] = set_int([](GeneratorConfig& c) -> int& { return c.papers.vocabulary_size; });
    k["papers.keywords_per_paper"] = set_int([](GeneratorConfig& c) -> int& { return c.papers.keywords_per_paper; });
    k["papers.min_reviewers"] = set_int([](GeneratorConfig& c) -> int& { return c.papers.min_reviewers; });
    k["papers.max_reviewers"] = set_int([](GeneratorConfig& c) -> int& { return c.papers.max_reviewers; });
    k["papers.max_declines_per_slot"] = set_int([](GeneratorConfig& c) -> int& { return c.papers.max_declines_per_slot; });
    k["papers.withdrawn_probability"] =
        set_double([](GeneratorConfig& c) -> double& { return c.papers.withdrawn_probability; });
    k["papers.seasonal_decline_boost"] =
        set_double([](GeneratorConfig& c) -> double& { return c.papers.seasonal_decline_boost; });

    k["citations.accepted_mean_normal"] =
        set_double([](GeneratorConfig& c) -> double& { return c.citations.accepted_mean_normal; });
    k["citations.accepted_mean_anomalous"] =
        set_double([](GeneratorConfig& c) -> double& { return c.citations.accepted_mean_anomalous; });
    k["citations.rejected_mean_normal"] =
        set_double([](GeneratorConfig& c) -> double& { return c.citations.rejected_mean_normal; });
    k["citations.rejected_mean_anomalous"] =
        set_double([](GeneratorConfig& c) -> double& { return c.citations.rejected_mean_anomalous; });
    k["citations.dispersion"] = set_double([](GeneratorConfig& c) -> double& { return c.citations.dispersion; });
    k["citations.external_publication_probability"] =
        set_double([](GeneratorConfig& c) -> double& { return c.citations.external_publication_probability; });
    k["citations.post_window_years"] = set_int([](GeneratorConfig& c) -> int& { return c.citations.post_window_years; });
    k["citations.anomalous_trend_weights"] =
        set_list([](GeneratorConfig& c) -> std::vector<double>& { return c.citations.anomalous_trend_weights; });
    return k;
  }();
  return keys;
}

}  // namespace

GeneratorConfig generator_config(const ConfigTable& table) {
  GeneratorConfig config;
  const auto& keys = config_keys();
  for (const auto& [key, value] : table) {
    auto it = keys.find(key);
    if (it == keys.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(config, value, key);
  }
  config.validate();
  return config;
}

GeneratorConfig load_generator_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("config file not found or unreadable: " + path.string());
  return generator_config(parse_config(in));
}

std::size_t GroundTruth::anomalous_editors() const {
  return static_cast<std::size_t>(std::count_if(editors.begin(), editors.end(), [](const auto& e) { return e.second; }));
}

std::size_t GroundTruth::anomalous_reviewers() const {
  return static_cast<std::size_t>(
      std::count_if(reviewers.begin(), reviewers.end(), [](const auto& e) { return e.second; }));
}

namespace {

// ---- sampling helpers ---------------------------------------------------

std::size_t pick_index(Rng& rng, std::size_t n) {
  return std::min(static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(n)), n - 1);
}

bool coin(Rng& rng, double p) { return unit_uniform(rng) < p; }

// Log-normal days with the given median, at least one day.
int lognormal_days(Rng& rng, double median, double sigma) {
  std::normal_distribution<double> z(0.0, 1.0);
  const double days = median * std::exp(sigma * z(rng));
  return static_cast<int>(std::max(1.0, std::round(days)));
}

std::int64_t poisson(Rng& rng, double mean) {
  if (mean <= 0.0) return 0;
  return std::poisson_distribution<std::int64_t>(mean)(rng);
}

// Gamma-Poisson mixture: mean `mean`, variance mean + mean^2 / shape.
std::int64_t negative_binomial(Rng& rng, double mean, double shape) {
  if (mean <= 0.0) return 0;
  const double lambda = std::gamma_distribution<double>(shape, mean / shape)(rng);
  return poisson(rng, lambda);
}

// k distinct indices from [0, n), in draw order.
std::vector<std::size_t> sample_distinct(Rng& rng, std::size_t n, std::size_t k) {
  k = std::min(k, n);
  std::vector<std::size_t> out;
  out.reserve(k);
  if (k * 4 < n) {
    std::set<std::size_t> seen;
    while (out.size() < k) {
      const auto i = pick_index(rng, n);
      if (seen.insert(i).second) out.push_back(i);
    }
    return out;
  }
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(all[i], all[i + pick_index(rng, n - i)]);
    out.push_back(all[i]);
  }
  return out;
}

std::string make_id(char prefix, std::size_t index, int width) {
  auto digits = std::to_string(index + 1);
  if (digits.size() < static_cast<std::size_t>(width)) digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
  return prefix + digits;
}

int id_width(std::size_t n) {
  int w = 1;
  for (std::size_t v = n; v >= 10; v /= 10) ++w;
  return std::max(w, 4);
}

enum class Trend { Steady, GoodThenDrop, Noisy };

// Relative citation level at normalized time u in [0, 1]; each averages ~1.
double trend_multiplier(Trend t, double u) {
  switch (t) {
    case Trend::Steady:
      return 1.8 - 1.6 * u;
    case Trend::GoodThenDrop:
      return u < 0.4 ? 1.7 : 0.45;
    case Trend::Noisy:
      return std::max(0.05, 1.4 - 0.8 * u + 0.8 * std::sin(5.0 * std::numbers::pi * u));
  }
  return 1.0;
}

struct Editor {
  std::string id;
  bool anomalous = false;
  std::vector<std::size_t> reviewer_pool;  // empty: any reviewer of the editor's class
  std::vector<std::size_t> authors;        // empty: whole population
  std::vector<std::size_t> keywords;       // empty: whole vocabulary
};

struct Reviewer {
  std::string id;
  bool anomalous = false;
  double report_median = 0.0;
  double acceptance = 0.0;
  Trend trend = Trend::Steady;
};

struct Slot {
  std::size_t reviewer;  // index, or npos for a self-review
  bool reported = false;
  Verdict verdict = Verdict::Accept;
};

constexpr std::size_t kSelf = static_cast<std::size_t>(-1);

class Generator {
 public:
  explicit Generator(const GeneratorConfig& config) : c_(config) {}

  SyntheticCorpus run();

 private:
  void make_agents();
  std::vector<std::pair<int, std::size_t>> arrivals();  // (day offset, editor)
  std::size_t draw_reviewer(const Editor& ed, const std::set<std::size_t>& used);
  CitationsByYear citation_profile(int publication_year, double mean);

  const GeneratorConfig& c_;
  Rng agents_rng_{derive_seed(derive_seed(c_.seed, "synthgen"), "agents")};
  Rng arrival_rng_{derive_seed(derive_seed(c_.seed, "synthgen"), "arrivals")};
  Rng paper_rng_{derive_seed(derive_seed(c_.seed, "synthgen"), "papers")};
  std::vector<Editor> editors_;
  std::vector<Reviewer> reviewers_;
  std::vector<std::size_t> normal_reviewers_;
  std::vector<std::size_t> anomalous_reviewers_;
};

void Generator::make_agents() {
  const auto n_ed = static_cast<std::size_t>(c_.n_editors);
  const auto n_rev = static_cast<std::size_t>(c_.n_reviewers);
  const auto n_anom_ed = static_cast<std::size_t>(std::llround(c_.anomalous_editor_fraction * c_.n_editors));
  const auto n_anom_rev = static_cast<std::size_t>(std::llround(c_.anomalous_reviewer_fraction * c_.n_reviewers));

  std::vector<bool> ed_flag(n_ed, false), rev_flag(n_rev, false);
  for (auto i : sample_distinct(agents_rng_, n_ed, n_anom_ed)) ed_flag[i] = true;
  for (auto i : sample_distinct(agents_rng_, n_rev, n_anom_rev)) rev_flag[i] = true;

  const int ew = id_width(n_ed), rw = id_width(n_rev);
  std::vector<double> trend_cdf;
  double total = 0.0;
  for (double w : c_.citations.anomalous_trend_weights) trend_cdf.push_back(total += w);

  for (std::size_t i = 0; i < n_rev; ++i) {
    Reviewer r;
    r.id = make_id('R', i, rw);
    r.anomalous = rev_flag[i];
    const auto& b = r.anomalous ? c_.anomalous_reviewer : c_.normal_reviewer;
    r.report_median = b.report_delay_median_days[pick_index(agents_rng_, b.report_delay_median_days.size())];
    r.acceptance = b.acceptance_probability[pick_index(agents_rng_, b.acceptance_probability.size())];
    if (r.anomalous && !trend_cdf.empty()) {
      const double u = unit_uniform(agents_rng_) * total;
      const auto k = static_cast<std::size_t>(std::upper_bound(trend_cdf.begin(), trend_cdf.end(), u) - trend_cdf.begin());
      r.trend = static_cast<Trend>(std::min<std::size_t>(k, 2));
    }
    (r.anomalous ? anomalous_reviewers_ : normal_reviewers_).push_back(i);
    reviewers_.push_back(std::move(r));
  }

  std::size_t anomalous_seen = 0;
  for (std::size_t i = 0; i < n_ed; ++i) {
    Editor e;
    e.id = make_id('E', i, ew);
    e.anomalous = ed_flag[i];
    const auto& b = e.anomalous ? c_.anomalous_editor : c_.normal_editor;
    const auto& own = e.anomalous ? anomalous_reviewers_ : normal_reviewers_;
    if (b.reviewer_pool_size > 0 && !own.empty()) {
      // Anomalous editors take a round-robin share of their class first so
      // that pools overlap little, then top up at random.
      std::set<std::size_t> pool;
      if (e.anomalous && n_anom_ed > 0) {
        for (std::size_t j = anomalous_seen; j < own.size() && pool.size() < static_cast<std::size_t>(b.reviewer_pool_size);
             j += n_anom_ed) {
          pool.insert(own[j]);
        }
      }
      const auto want = std::min(own.size(), static_cast<std::size_t>(b.reviewer_pool_size));
      while (pool.size() < want) pool.insert(own[pick_index(agents_rng_, own.size())]);
      e.reviewer_pool.assign(pool.begin(), pool.end());
    }
    if (e.anomalous) ++anomalous_seen;
    if (b.author_pool_size > 0) {
      e.authors = sample_distinct(agents_rng_, static_cast<std::size_t>(c_.papers.author_population),
                                  static_cast<std::size_t>(b.author_pool_size));
    }
    if (b.keyword_pool_size > 0) {
      e.keywords = sample_distinct(agents_rng_, static_cast<std::size_t>(c_.papers.vocabulary_size),
                                   static_cast<std::size_t>(b.keyword_pool_size));
    }
    editors_.push_back(std::move(e));
  }
}

std::vector<std::pair<int, std::size_t>> Generator::arrivals() {
  const auto start = Date::from_ymd(c_.start_year, 1, 1);
  const auto end = Date::from_ymd(c_.start_year + c_.time_span_years, 1, 1);
  const int span = days_between(start, end);

  // Papers go to editors in proportion to their assignment rates.
  std::vector<double> cdf;
  double total = 0.0;
  for (const auto& e : editors_) {
    total += (e.anomalous ? c_.anomalous_editor : c_.normal_editor).assignment_rate;
    cdf.push_back(total);
  }
  std::vector<std::size_t> per_editor(editors_.size(), 0);
  for (int p = 0; p < c_.n_papers; ++p) {
    const double u = unit_uniform(arrival_rng_) * total;
    const auto k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    ++per_editor[std::min(k, editors_.size() - 1)];
  }

  // Exponential inter-arrival gaps, rescaled to the time span.
  std::exponential_distribution<double> gap(1.0);
  std::vector<std::pair<int, std::size_t>> out;
  for (std::size_t e = 0; e < editors_.size(); ++e) {
    const auto n = per_editor[e];
    if (n == 0) continue;
    std::vector<double> t(n + 1);
    double acc = 0.0;
    for (auto& x : t) x = (acc += gap(arrival_rng_));
    for (std::size_t i = 0; i < n; ++i) {
      const int day = static_cast<int>(std::floor(t[i] / t[n] * span));
      out.emplace_back(std::clamp(day, 0, span - 1), e);
    }
  }
  std::stable_sort(out.begin(), out.end());
  return out;
}

std::size_t Generator::draw_reviewer(const Editor& ed, const std::set<std::size_t>& used) {
  const auto& b = ed.anomalous ? c_.anomalous_editor : c_.normal_editor;
  for (int attempt = 0; attempt < 32; ++attempt) {
    const std::vector<std::size_t>* source = &ed.reviewer_pool;
    const auto& own = ed.anomalous ? anomalous_reviewers_ : normal_reviewers_;
    const auto& other = ed.anomalous ? normal_reviewers_ : anomalous_reviewers_;
    if (!other.empty() && coin(paper_rng_, b.cross_class_reviewer_probability)) {
      source = &other;
    } else if (source->empty()) {
      source = own.empty() ? &other : &own;
    }
    const auto r = (*source)[pick_index(paper_rng_, source->size())];
    if (!used.contains(r)) return r;
  }
  return kSelf;
}

CitationsByYear Generator::citation_profile(int publication_year, double mean) {
  const int window = c_.settings.citation_window_years;
  CitationsByYear out;
  auto remaining = negative_binomial(paper_rng_, mean, c_.citations.dispersion);
  for (int y = 0; y <= window; ++y) {
    std::int64_t n = remaining;
    if (y < window && remaining > 0) {
      n = std::binomial_distribution<std::int64_t>(remaining, 1.0 / (window + 1 - y))(paper_rng_);
    }
    out[publication_year + y] = n;
    remaining -= n;
  }
  const double per_year = mean / (window + 1);
  for (int y = 1; y <= c_.citations.post_window_years; ++y) {
    out[publication_year + window + y] = negative_binomial(paper_rng_, per_year, c_.citations.dispersion);
  }
  return out;
}

SyntheticCorpus Generator::run() {
  SyntheticCorpus result;
  if (c_.n_papers == 0) {
    result.corpus = Corpus({}, {}, c_.settings);
    return result;
  }
  make_agents();
  for (const auto& e : editors_) result.truth.editors[e.id] = e.anomalous;
  for (const auto& r : reviewers_) result.truth.reviewers[r.id] = r.anomalous;

  const auto start = Date::from_ymd(c_.start_year, 1, 1);
  const double span = days_between(start, Date::from_ymd(c_.start_year + c_.time_span_years, 1, 1));
  const auto arrivals_list = arrivals();
  const int pw = id_width(arrivals_list.size());

  std::vector<PaperRecord> papers;
  std::vector<ReviewEvent> events;
  papers.reserve(arrivals_list.size());
  for (std::size_t p = 0; p < arrivals_list.size(); ++p) {
    const auto& [offset, e_idx] = arrivals_list[p];
    const auto& ed = editors_[e_idx];
    const auto& eb = ed.anomalous ? c_.anomalous_editor : c_.normal_editor;

    PaperRecord paper;
    paper.paper_id = make_id('P', p, pw);
    paper.submission_date = Date::from_days(start.days() + offset);

    const auto n_authors = static_cast<std::size_t>(1 + poisson(paper_rng_, c_.papers.mean_extra_authors));
    std::set<std::string> authors;
    if (ed.authors.empty()) {
      for (auto a : sample_distinct(paper_rng_, static_cast<std::size_t>(c_.papers.author_population), n_authors)) {
        authors.insert(make_id('A', a, 6));
      }
    } else {
      for (auto a : sample_distinct(paper_rng_, ed.authors.size(), n_authors)) authors.insert(make_id('A', ed.authors[a], 6));
    }
    paper.author_ids.assign(authors.begin(), authors.end());

    std::set<std::string> keywords;
    const auto n_kw = static_cast<std::size_t>(c_.papers.keywords_per_paper);
    if (ed.keywords.empty()) {
      for (auto k : sample_distinct(paper_rng_, static_cast<std::size_t>(c_.papers.vocabulary_size), n_kw)) {
        keywords.insert(make_id('k', k, 3));
      }
    } else {
      for (auto k : sample_distinct(paper_rng_, ed.keywords.size(), n_kw)) keywords.insert(make_id('k', ed.keywords[k], 3));
    }
    paper.keywords.assign(keywords.begin(), keywords.end());

    auto event = [&](const std::string& actor, EventKind kind, Date date) -> ReviewEvent& {
      ReviewEvent ev;
      ev.paper_id = paper.paper_id;
      ev.actor_id = actor;
      ev.kind = kind;
      ev.date = date;
      if (carries_assigning_editor(kind)) ev.assigning_editor_id = ed.id;
      events.push_back(std::move(ev));
      return events.back();
    };

    event(ed.id, EventKind::EditorAssigned, paper.submission_date);
    Date last = paper.submission_date;
    // Editor plus every reviewer who agreed; their anomalous share sets the
    // citation regime.
    int n_agents = 1;
    int n_anomalous_agents = ed.anomalous ? 1 : 0;
    const Reviewer* trend_source = nullptr;
    std::vector<Slot> slots;
    std::set<std::size_t> used;

    const int n_slots = c_.papers.min_reviewers +
                        static_cast<int>(pick_index(paper_rng_, static_cast<std::size_t>(c_.papers.max_reviewers -
                                                                                         c_.papers.min_reviewers + 1)));
    const bool self_review = coin(paper_rng_, eb.self_review_probability);
    for (int s = 0; s < n_slots; ++s) {
      Date t = Date::from_days(paper.submission_date.days() + 1 + s);
      if (s == 0 && self_review) {
        event(ed.id, EventKind::SelfReviewAssigned, t);
        const auto done = Date::from_days(t.days() + lognormal_days(paper_rng_, eb.self_review_delay_median_days,
                                                                     c_.normal_reviewer.report_delay_sigma));
        const auto v = coin(paper_rng_, eb.self_review_acceptance_probability) ? Verdict::Accept : Verdict::Reject;
        event(ed.id, EventKind::ReportReceived, done).decision_payload = v;
        slots.push_back({kSelf, true, v});
        last = std::max(last, done);
        continue;
      }
      for (int attempt = 0; attempt <= c_.papers.max_declines_per_slot; ++attempt) {
        const auto r_idx = draw_reviewer(ed, used);
        if (r_idx == kSelf) break;
        used.insert(r_idx);
        const auto& r = reviewers_[r_idx];
        const auto& rb = r.anomalous ? c_.anomalous_reviewer : c_.normal_reviewer;
        event(r.id, EventKind::ReviewerAssigned, t);
        last = std::max(last, t);
        double p_decline = rb.decline_probability;
        if (t.month() == 7 || t.month() == 8) p_decline = std::min(0.95, p_decline * c_.papers.seasonal_decline_boost);
        if (attempt < c_.papers.max_declines_per_slot && coin(paper_rng_, p_decline)) {
          const auto d = Date::from_days(t.days() + lognormal_days(paper_rng_, rb.decline_delay_median_days,
                                                                   rb.decline_delay_sigma));
          event(r.id, EventKind::ReviewerDeclined, d);
          last = std::max(last, d);
          t = Date::from_days(d.days() + 1);
          continue;
        }
        ++n_agents;
        if (r.anomalous) {
          ++n_anomalous_agents;
          if (!trend_source) trend_source = &r;
        }
        if (coin(paper_rng_, rb.no_report_probability)) {
          slots.push_back({r_idx, false, Verdict::Accept});
          break;
        }
        const auto done = Date::from_days(t.days() + lognormal_days(paper_rng_, r.report_median, rb.report_delay_sigma));
        const auto v = coin(paper_rng_, r.acceptance) ? Verdict::Accept : Verdict::Reject;
        event(r.id, EventKind::ReportReceived, done).decision_payload = v;
        slots.push_back({r_idx, true, v});
        last = std::max(last, done);
        break;
      }
    }

    if (coin(paper_rng_, c_.papers.withdrawn_probability)) {
      paper.final_decision = FinalDecision::Withdrawn;
      papers.push_back(std::move(paper));
      continue;
    }
    int accepts = 0, rejects = 0;
    for (const auto& s : slots) {
      if (!s.reported) continue;
      (s.verdict == Verdict::Accept ? accepts : rejects) += 1;
    }
    const bool accept = accepts != rejects ? accepts > rejects : coin(paper_rng_, 0.5);
    const auto decided =
        Date::from_days(last.days() + lognormal_days(paper_rng_, eb.decision_delay_median_days, 0.3));
    event(ed.id, EventKind::FinalDecision, decided).decision_payload = accept ? Verdict::Accept : Verdict::Reject;

    const int year = decided.year();
    // Geometric blend: a lone anomalous co-reviewer shifts a paper part way,
    // a fully anomalous panel reaches the anomalous mean.
    const double share = static_cast<double>(n_anomalous_agents) / static_cast<double>(n_agents);
    const auto blend = [share](double normal, double anomalous) {
      return std::pow(normal, 1.0 - share) * std::pow(anomalous, share);
    };
    if (accept) {
      paper.final_decision = FinalDecision::Accepted;
      paper.publication_year = year;
      double mean = blend(c_.citations.accepted_mean_normal, c_.citations.accepted_mean_anomalous);
      if (trend_source && !c_.citations.anomalous_trend_weights.empty()) {
        const double u = std::clamp((decided.days() - start.days()) / span, 0.0, 1.0);
        mean *= trend_multiplier(trend_source->trend, u);
      }
      paper.citations_by_year = citation_profile(year, mean);
    } else {
      paper.final_decision = FinalDecision::Rejected;
      if (coin(paper_rng_, c_.citations.external_publication_probability)) {
        const double mean = blend(c_.citations.rejected_mean_normal, c_.citations.rejected_mean_anomalous);
        paper.external_profile = ExternalProfile{year + 1, citation_profile(year + 1, mean)};
      }
    }
    papers.push_back(std::move(paper));
  }

  result.corpus = Corpus(std::move(papers), std::move(events), c_.settings);
  return result;
}

}  // namespace

SyntheticCorpus generate(const GeneratorConfig& config) {
  config.validate();
  Generator g(config);
  return g.run();
}

void write_truth_csv(const GroundTruth& truth, std::ostream& out) {
  out << "agent_id,role,label\n";
  for (const auto& [id, anomalous] : truth.editors) out << id << ",editor," << (anomalous ? "anomalous" : "normal") << '\n';
  for (const auto& [id, anomalous] : truth.reviewers) {
    out << id << ",reviewer," << (anomalous ? "anomalous" : "normal") << '\n';
  }
}

GroundTruth read_truth_csv(std::istream& in) {
  GroundTruth truth;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (lineno == 1 && line.starts_with("agent_id"))) continue;
    std::stringstream row(line);
    std::string id, role, label;
    if (!std::getline(row, id, ',') || !std::getline(row, role, ',') || !std::getline(row, label)) {
      throw ValidationError("truth file: expected agent_id,role,label", lineno);
    }
    if (label != "normal" && label != "anomalous") throw ValidationError("truth file: unknown label '" + label + "'", lineno);
    const bool anomalous = label == "anomalous";
    if (role == "editor") {
      truth.editors[id] = anomalous;
    } else if (role == "reviewer") {
      truth.reviewers[id] = anomalous;
    } else {
      throw ValidationError("truth file: unknown role '" + role + "'", lineno);
    }
  }
  return truth;
}

}  // namespace refaudit
