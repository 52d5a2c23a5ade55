#include "refaudit/ledger.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <utility>

#include <json.hpp>

#include "refaudit/error.hpp"

namespace refaudit {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<EventKind, std::string_view>, 6> kEventKindNames{{
    {EventKind::EditorAssigned, "EditorAssigned"},
    {EventKind::ReviewerAssigned, "ReviewerAssigned"},
    {EventKind::ReviewerDeclined, "ReviewerDeclined"},
    {EventKind::ReportReceived, "ReportReceived"},
    {EventKind::SelfReviewAssigned, "SelfReviewAssigned"},
    {EventKind::FinalDecision, "FinalDecision"},
}};

constexpr std::array<std::pair<FinalDecision, std::string_view>, 4> kDecisionNames{{
    {FinalDecision::Accepted, "Accepted"},
    {FinalDecision::Rejected, "Rejected"},
    {FinalDecision::Withdrawn, "Withdrawn"},
    {FinalDecision::Unknown, "Unknown"},
}};

std::size_t line_at(const std::vector<std::size_t>& lines, std::size_t i) {
  return i < lines.size() ? lines[i] : 0;
}

void sort_unique(std::vector<std::string>& values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
}

std::int64_t window_sum(const CitationsByYear& citations, int first_year, int window_years) {
  std::int64_t total = 0;
  for (auto it = citations.lower_bound(first_year);
       it != citations.end() && it->first <= first_year + window_years; ++it) {
    total += it->second;
  }
  return total;
}

// ---- JSON helpers -------------------------------------------------------

const json& require(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    throw ValidationError(std::string("missing field '") + key + "'", line);
  }
  return *it;
}

std::string require_string(const json& obj, const char* key, std::size_t line) {
  const json& v = require(obj, key, line);
  if (!v.is_string()) throw ValidationError(std::string("field '") + key + "' must be a string", line);
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ValidationError(std::string("field '") + key + "' must be a string", line);
  return it->get<std::string>();
}

std::vector<std::string> string_list(const json& obj, const char* key, std::size_t line) {
  std::vector<std::string> out;
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_array()) throw ValidationError(std::string("field '") + key + "' must be an array", line);
  for (const auto& v : *it) {
    if (!v.is_string()) throw ValidationError(std::string("field '") + key + "' must hold strings", line);
    out.push_back(v.get<std::string>());
  }
  return out;
}

Date parse_date_field(const json& obj, const char* key, std::size_t line) {
  try {
    return Date::parse(require_string(obj, key, line));
  } catch (const ValidationError& e) {
    if (e.line() != 0) throw;
    throw ValidationError(e.what(), line);
  }
}

int parse_year(const json& v, const char* key, std::size_t line) {
  if (!v.is_number_integer()) throw ValidationError(std::string("field '") + key + "' must be an integer", line);
  return v.get<int>();
}

CitationsByYear parse_citations(const json& obj, std::size_t line) {
  CitationsByYear out;
  auto it = obj.find("citations_by_year");
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_object()) throw ValidationError("field 'citations_by_year' must be an object", line);
  for (const auto& [key, value] : it->items()) {
    int year = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), year);
    if (ec != std::errc{} || ptr != key.data() + key.size()) {
      throw ValidationError("citation year '" + key + "' is not an integer", line);
    }
    if (!value.is_number_integer()) {
      throw ValidationError("citation count for " + key + " must be an integer", line);
    }
    out[year] = value.get<std::int64_t>();
  }
  return out;
}

json citations_to_json(const CitationsByYear& citations) {
  json out = json::object();
  for (const auto& [year, count] : citations) out[std::to_string(year)] = count;
  return out;
}

PaperRecord parse_paper(const json& obj, std::size_t line) {
  PaperRecord p;
  p.paper_id = require_string(obj, "paper_id", line);
  p.author_ids = string_list(obj, "author_ids", line);
  sort_unique(p.author_ids);
  for (const auto& k : string_list(obj, "keywords", line)) {
    auto normalized = normalize_keyword(k);
    if (!normalized.empty()) p.keywords.push_back(std::move(normalized));
  }
  sort_unique(p.keywords);
  p.submission_date = parse_date_field(obj, "submission_date", line);
  const auto decision_text = require_string(obj, "final_decision", line);
  auto decision = parse_final_decision(decision_text);
  if (!decision) throw ValidationError("unknown final_decision '" + decision_text + "'", line);
  p.final_decision = *decision;
  if (auto it = obj.find("publication_year"); it != obj.end() && !it->is_null()) {
    p.publication_year = parse_year(*it, "publication_year", line);
  }
  p.citations_by_year = parse_citations(obj, line);
  if (auto it = obj.find("external_profile"); it != obj.end() && !it->is_null()) {
    if (!it->is_object()) throw ValidationError("field 'external_profile' must be an object", line);
    ExternalProfile ext;
    ext.publication_year = parse_year(require(*it, "publication_year", line), "publication_year", line);
    ext.citations_by_year = parse_citations(*it, line);
    p.external_profile = std::move(ext);
  }
  return p;
}

ReviewEvent parse_event(const json& obj, std::size_t line) {
  ReviewEvent e;
  e.paper_id = require_string(obj, "paper_id", line);
  e.actor_id = require_string(obj, "actor_id", line);
  const auto kind_text = require_string(obj, "kind", line);
  auto kind = parse_event_kind(kind_text);
  if (!kind) throw ValidationError("unknown event kind '" + kind_text + "'", line);
  e.kind = *kind;
  e.date = parse_date_field(obj, "date", line);
  if (auto payload = optional_string(obj, "decision_payload", line)) {
    auto verdict = parse_verdict(*payload);
    if (!verdict) throw ValidationError("unknown decision_payload '" + *payload + "'", line);
    e.decision_payload = *verdict;
  }
  e.assigning_editor_id = optional_string(obj, "assigning_editor_id", line);
  return e;
}

}  // namespace

std::string_view to_string(EventKind kind) {
  for (const auto& [k, name] : kEventKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::string_view to_string(Verdict verdict) { return verdict == Verdict::Accept ? "Accept" : "Reject"; }

std::string_view to_string(FinalDecision decision) {
  for (const auto& [d, name] : kDecisionNames) {
    if (d == decision) return name;
  }
  return "?";
}

std::optional<EventKind> parse_event_kind(std::string_view text) {
  for (const auto& [k, name] : kEventKindNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

std::optional<Verdict> parse_verdict(std::string_view text) {
  if (text == "Accept") return Verdict::Accept;
  if (text == "Reject") return Verdict::Reject;
  return std::nullopt;
}

std::optional<FinalDecision> parse_final_decision(std::string_view text) {
  for (const auto& [d, name] : kDecisionNames) {
    if (name == text) return d;
  }
  return std::nullopt;
}

bool carries_payload(EventKind kind) {
  return kind == EventKind::ReportReceived || kind == EventKind::FinalDecision;
}

bool carries_assigning_editor(EventKind kind) {
  return kind == EventKind::ReviewerAssigned || kind == EventKind::ReviewerDeclined ||
         kind == EventKind::SelfReviewAssigned;
}

std::string normalize_keyword(std::string_view raw) {
  auto first = raw.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  auto last = raw.find_last_not_of(" \t\r\n");
  std::string out(raw.substr(first, last - first + 1));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// ---- Corpus ---------------------------------------------------------------

Corpus::Corpus(std::vector<PaperRecord> papers, std::vector<ReviewEvent> events, CorpusSettings settings)
    : Corpus(std::move(papers), std::move(events), settings, {}, {}) {}

Corpus::Corpus(std::vector<PaperRecord> papers, std::vector<ReviewEvent> events, CorpusSettings settings,
               const std::vector<std::size_t>& paper_lines, const std::vector<std::size_t>& event_lines)
    : papers_(std::move(papers)), events_(std::move(events)), settings_(settings) {
  build(paper_lines, event_lines);
}

Corpus Corpus::with_settings(CorpusSettings settings) const {
  Corpus copy = *this;
  if (settings.analysis_cutoff_year <= 0 || settings.citation_window_years <= 0) {
    throw ValidationError("analysis_cutoff_year and citation_window_years must be positive");
  }
  copy.settings_ = settings;
  return copy;
}

std::optional<std::size_t> Corpus::paper_index(std::string_view paper_id) const {
  auto it = paper_lookup_.find(std::string(paper_id));
  if (it == paper_lookup_.end()) return std::nullopt;
  return it->second;
}

void Corpus::build(const std::vector<std::size_t>& paper_lines, const std::vector<std::size_t>& event_lines) {
  if (settings_.analysis_cutoff_year <= 0 || settings_.citation_window_years <= 0) {
    throw ValidationError("analysis_cutoff_year and citation_window_years must be positive");
  }

  paper_lookup_.clear();
  paper_lookup_.reserve(papers_.size());
  for (std::size_t i = 0; i < papers_.size(); ++i) {
    auto& p = papers_[i];
    const auto line = line_at(paper_lines, i);
    if (p.paper_id.empty()) throw ValidationError("empty paper_id", line);
    sort_unique(p.author_ids);
    sort_unique(p.keywords);
    if (!paper_lookup_.emplace(p.paper_id, i).second) {
      throw ValidationError("duplicate paper_id '" + p.paper_id + "'", line);
    }
    const bool accepted = p.final_decision == FinalDecision::Accepted;
    if (accepted != p.publication_year.has_value()) {
      throw ValidationError("paper '" + p.paper_id + "': publication_year must be present iff final_decision is Accepted",
                            line);
    }
    if (!accepted && !p.citations_by_year.empty()) {
      throw ValidationError("paper '" + p.paper_id + "': citations_by_year requires a publication_year", line);
    }
    for (const auto& [year, count] : p.citations_by_year) {
      if (count < 0) throw ValidationError("paper '" + p.paper_id + "': negative citation count", line);
      if (year < *p.publication_year) {
        throw ValidationError("paper '" + p.paper_id + "': citation year " + std::to_string(year) +
                                  " precedes publication year",
                              line);
      }
    }
    if (p.external_profile) {
      if (p.final_decision != FinalDecision::Rejected) {
        throw ValidationError("paper '" + p.paper_id + "': external_profile is only allowed on Rejected papers", line);
      }
      for (const auto& [year, count] : p.external_profile->citations_by_year) {
        if (count < 0) throw ValidationError("paper '" + p.paper_id + "': negative citation count", line);
        if (year < p.external_profile->publication_year) {
          throw ValidationError("paper '" + p.paper_id + "': external citation year precedes publication year", line);
        }
      }
    }
  }

  // Per-record checks, then stable grouping by (paper, date).
  std::vector<std::size_t> event_paper(events_.size());
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const auto& e = events_[i];
    const auto line = line_at(event_lines, i);
    auto idx = paper_index(e.paper_id);
    if (!idx) throw ReferentialError("event references unknown paper_id '" + e.paper_id + "'", line);
    event_paper[i] = *idx;
    if (e.actor_id.empty()) throw ValidationError("empty actor_id", line);
    if (carries_payload(e.kind) != e.decision_payload.has_value()) {
      throw ValidationError(std::string("decision_payload ") + (e.decision_payload ? "not allowed on " : "required on ") +
                                std::string(to_string(e.kind)) + " event",
                            line);
    }
    if (carries_assigning_editor(e.kind) != e.assigning_editor_id.has_value()) {
      throw ValidationError(std::string("assigning_editor_id ") +
                                (e.assigning_editor_id ? "not allowed on " : "required on ") +
                                std::string(to_string(e.kind)) + " event",
                            line);
    }
    if (e.kind == EventKind::SelfReviewAssigned && e.actor_id != *e.assigning_editor_id) {
      throw ValidationError("SelfReviewAssigned requires actor_id == assigning_editor_id", line);
    }
  }

  std::vector<std::size_t> order(events_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (event_paper[a] != event_paper[b]) return event_paper[a] < event_paper[b];
    return events_[a].date < events_[b].date;
  });
  {
    std::vector<ReviewEvent> sorted;
    sorted.reserve(events_.size());
    std::vector<std::size_t> sorted_lines;
    sorted_lines.reserve(events_.size());
    for (auto i : order) {
      sorted.push_back(std::move(events_[i]));
      sorted_lines.push_back(line_at(event_lines, i));
    }
    events_ = std::move(sorted);
    std::vector<std::size_t> sorted_paper;
    sorted_paper.reserve(order.size());
    for (auto i : order) sorted_paper.push_back(event_paper[i]);
    event_paper = std::move(sorted_paper);

    paper_editors_.assign(papers_.size(), {});
    decision_dates_.assign(papers_.size(), std::nullopt);
    assignments_.clear();

    for (const auto& e : events_) {
      if (e.kind == EventKind::EditorAssigned) {
        paper_editors_[paper_lookup_.at(e.paper_id)].emplace_back(e.actor_id, e.date);
      }
    }

    // Open assignments per (paper, reviewer) are matched first-in-first-out.
    std::size_t current_paper = static_cast<std::size_t>(-1);
    std::map<std::string, std::vector<std::size_t>> open;
    for (std::size_t i = 0; i < events_.size(); ++i) {
      const auto& e = events_[i];
      const auto pidx = event_paper[i];
      const auto line = sorted_lines[i];
      if (pidx != current_paper) {
        open.clear();
        current_paper = pidx;
      }
      if (carries_assigning_editor(e.kind)) {
        const auto& editors = paper_editors_[pidx];
        const bool known = std::any_of(editors.begin(), editors.end(),
                                       [&](const auto& ed) { return ed.first == *e.assigning_editor_id; });
        if (!known) {
          throw ReferentialError("assigning editor '" + *e.assigning_editor_id + "' has no EditorAssigned event on paper '" +
                                     e.paper_id + "'",
                                 line);
        }
      }
      switch (e.kind) {
        case EventKind::EditorAssigned:
          break;
        case EventKind::ReviewerAssigned:
        case EventKind::SelfReviewAssigned: {
          Assignment a;
          a.paper = pidx;
          a.reviewer_id = e.actor_id;
          a.editor_id = *e.assigning_editor_id;
          a.assigned = e.date;
          a.self_review = e.kind == EventKind::SelfReviewAssigned;
          open[e.actor_id].push_back(assignments_.size());
          assignments_.push_back(std::move(a));
          break;
        }
        case EventKind::ReviewerDeclined:
        case EventKind::ReportReceived: {
          auto it = open.find(e.actor_id);
          if (it == open.end() || it->second.empty()) {
            throw ValidationError(std::string(to_string(e.kind)) + " for reviewer '" + e.actor_id + "' on paper '" +
                                      e.paper_id + "' has no open assignment on or before " + e.date.to_string(),
                                  line);
          }
          auto& a = assignments_[it->second.front()];
          it->second.erase(it->second.begin());
          if (e.kind == EventKind::ReviewerDeclined) {
            if (*e.assigning_editor_id != a.editor_id) {
              throw ValidationError("decline names editor '" + *e.assigning_editor_id + "' but the assignment came from '" +
                                        a.editor_id + "'",
                                    line);
            }
            a.declined = e.date;
          } else {
            a.reported = e.date;
            a.verdict = e.decision_payload;
          }
          break;
        }
        case EventKind::FinalDecision: {
          if (decision_dates_[pidx]) {
            throw ValidationError("paper '" + e.paper_id + "' has more than one FinalDecision event", line);
          }
          const auto& paper = papers_[pidx];
          const bool consistent =
              (paper.final_decision == FinalDecision::Accepted && *e.decision_payload == Verdict::Accept) ||
              (paper.final_decision == FinalDecision::Rejected && *e.decision_payload == Verdict::Reject);
          if (!consistent) {
            throw ValidationError("FinalDecision payload disagrees with paper '" + e.paper_id + "' final_decision", line);
          }
          decision_dates_[pidx] = e.date;
          break;
        }
      }
    }
  }
}

// ---- JSONL ----------------------------------------------------------------

Corpus parse_jsonl(std::istream& in, CorpusSettings settings) {
  std::vector<PaperRecord> papers;
  std::vector<ReviewEvent> events;
  std::vector<std::size_t> paper_lines;
  std::vector<std::size_t> event_lines;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ValidationError(std::string("malformed JSON: ") + e.what(), line);
    }
    if (!obj.is_object()) throw ValidationError("record must be a JSON object", line);
    const auto record = require_string(obj, "record", line);
    try {
      if (record == "paper") {
        papers.push_back(parse_paper(obj, line));
        paper_lines.push_back(line);
      } else if (record == "event") {
        events.push_back(parse_event(obj, line));
        event_lines.push_back(line);
      } else {
        throw ValidationError("unknown record type '" + record + "'", line);
      }
    } catch (const json::exception& e) {
      throw ValidationError(e.what(), line);
    }
  }
  return Corpus(std::move(papers), std::move(events), settings, paper_lines, event_lines);
}

Corpus ingest(const std::filesystem::path& path, CorpusSettings settings) {
  std::ifstream in(path);
  if (!in) throw Error("file not found or unreadable: " + path.string());
  return parse_jsonl(in, settings);
}

void write_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const auto& p : corpus.papers()) {
    json obj;
    obj["record"] = "paper";
    obj["paper_id"] = p.paper_id;
    obj["author_ids"] = p.author_ids;
    obj["keywords"] = p.keywords;
    obj["submission_date"] = p.submission_date.to_string();
    obj["final_decision"] = std::string(to_string(p.final_decision));
    if (p.publication_year) obj["publication_year"] = *p.publication_year;
    if (!p.citations_by_year.empty()) obj["citations_by_year"] = citations_to_json(p.citations_by_year);
    if (p.external_profile) {
      obj["external_profile"] = {{"publication_year", p.external_profile->publication_year},
                                 {"citations_by_year", citations_to_json(p.external_profile->citations_by_year)}};
    }
    out << obj.dump() << '\n';
  }
  for (const auto& e : corpus.events()) {
    json obj;
    obj["record"] = "event";
    obj["paper_id"] = e.paper_id;
    obj["actor_id"] = e.actor_id;
    obj["kind"] = std::string(to_string(e.kind));
    obj["date"] = e.date.to_string();
    if (e.decision_payload) obj["decision_payload"] = std::string(to_string(*e.decision_payload));
    if (e.assigning_editor_id) obj["assigning_editor_id"] = *e.assigning_editor_id;
    out << obj.dump() << '\n';
  }
}

// ---- Citation windows -------------------------------------------------------

std::int64_t citation_window(const PaperRecord& paper, int window_years) {
  if (paper.final_decision != FinalDecision::Accepted || !paper.publication_year) {
    throw PreconditionError("citation_window requires an Accepted paper with a publication year ('" + paper.paper_id +
                            "')");
  }
  if (window_years < 1) throw PreconditionError("window_years must be >= 1");
  return window_sum(paper.citations_by_year, *paper.publication_year, window_years);
}

std::optional<std::int64_t> rejected_citation(const PaperRecord& paper, int window_years) {
  if (paper.final_decision != FinalDecision::Rejected) {
    throw PreconditionError("rejected_citation requires a Rejected paper ('" + paper.paper_id + "')");
  }
  if (window_years < 1) throw PreconditionError("window_years must be >= 1");
  if (!paper.external_profile) return std::nullopt;
  return window_sum(paper.external_profile->citations_by_year, paper.external_profile->publication_year, window_years);
}

std::optional<std::int64_t> paper_citation(const PaperRecord& paper, int window_years) {
  switch (paper.final_decision) {
    case FinalDecision::Accepted:
      return citation_window(paper, window_years);
    case FinalDecision::Rejected:
      return rejected_citation(paper, window_years);
    default:
      return std::nullopt;
  }
}

}  // namespace refaudit
