#pragma once

// Canonical data model for review histories and citation profiles.
//
// A Corpus is built once (from a JSONL file or the synthetic generator),
// validated, and is immutable afterwards. Derived per-assignment records are
// indexed at construction so that metric code never re-walks raw events.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "refaudit/date.hpp"

namespace refaudit {

enum class EventKind {
  EditorAssigned,
  ReviewerAssigned,
  ReviewerDeclined,
  ReportReceived,
  SelfReviewAssigned,
  FinalDecision,
};

enum class Verdict { Accept, Reject };

enum class FinalDecision { Accepted, Rejected, Withdrawn, Unknown };

std::string_view to_string(EventKind kind);
std::string_view to_string(Verdict verdict);
std::string_view to_string(FinalDecision decision);
std::optional<EventKind> parse_event_kind(std::string_view text);
std::optional<Verdict> parse_verdict(std::string_view text);
std::optional<FinalDecision> parse_final_decision(std::string_view text);

bool carries_payload(EventKind kind);
bool carries_assigning_editor(EventKind kind);

struct ReviewEvent {
  std::string paper_id;
  std::string actor_id;
  EventKind kind = EventKind::EditorAssigned;
  Date date;
  std::optional<Verdict> decision_payload;
  std::optional<std::string> assigning_editor_id;

  friend bool operator==(const ReviewEvent&, const ReviewEvent&) = default;
};

using CitationsByYear = std::map<int, std::int64_t>;

// Publication venue data for a paper rejected here but published elsewhere.
struct ExternalProfile {
  int publication_year = 0;
  CitationsByYear citations_by_year;

  friend bool operator==(const ExternalProfile&, const ExternalProfile&) = default;
};

struct PaperRecord {
  std::string paper_id;
  std::vector<std::string> author_ids;  // sorted, unique
  std::vector<std::string> keywords;    // normalized, sorted, unique
  Date submission_date;
  std::optional<int> publication_year;  // present iff Accepted
  FinalDecision final_decision = FinalDecision::Unknown;
  CitationsByYear citations_by_year;
  std::optional<ExternalProfile> external_profile;  // Rejected papers only

  // Accepted and Rejected papers take part in metrics; the rest are kept in
  // the ledger only.
  bool is_decided() const {
    return final_decision == FinalDecision::Accepted || final_decision == FinalDecision::Rejected;
  }

  friend bool operator==(const PaperRecord&, const PaperRecord&) = default;
};

// Case-fold and trim.
std::string normalize_keyword(std::string_view raw);

struct CorpusSettings {
  int analysis_cutoff_year = 2013;
  int citation_window_years = 3;

  friend bool operator==(const CorpusSettings&, const CorpusSettings&) = default;
};

// One reviewer assignment and whatever closed it. Exactly one of
// `declined`/`reported` is set, or neither when the reviewer agreed and never
// sent a report.
struct Assignment {
  std::size_t paper = 0;  // index into Corpus::papers()
  std::string reviewer_id;
  std::string editor_id;
  Date assigned;
  bool self_review = false;
  std::optional<Date> declined;
  std::optional<Date> reported;
  std::optional<Verdict> verdict;
};

class Corpus {
 public:
  Corpus() = default;

  // Validates and indexes. Throws ValidationError / ReferentialError.
  Corpus(std::vector<PaperRecord> papers, std::vector<ReviewEvent> events,
         CorpusSettings settings = {});

  const std::vector<PaperRecord>& papers() const { return papers_; }
  // Grouped by paper (in paper order), then by date; same-day events keep
  // their input order.
  const std::vector<ReviewEvent>& events() const { return events_; }
  const CorpusSettings& settings() const { return settings_; }
  const std::vector<Assignment>& assignments() const { return assignments_; }

  std::optional<std::size_t> paper_index(std::string_view paper_id) const;
  const PaperRecord& paper(std::size_t index) const { return papers_.at(index); }

  // Editors with an EditorAssigned event on the paper, with assignment dates.
  const std::vector<std::pair<std::string, Date>>& paper_editors(std::size_t index) const {
    return paper_editors_.at(index);
  }
  std::optional<Date> decision_date(std::size_t index) const { return decision_dates_.at(index); }

  Corpus with_settings(CorpusSettings settings) const;

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.settings_ == b.settings_ && a.papers_ == b.papers_ && a.events_ == b.events_;
  }

 private:
  friend Corpus parse_jsonl(std::istream& in, CorpusSettings settings);

  Corpus(std::vector<PaperRecord> papers, std::vector<ReviewEvent> events, CorpusSettings settings,
         const std::vector<std::size_t>& paper_lines, const std::vector<std::size_t>& event_lines);
  void build(const std::vector<std::size_t>& paper_lines, const std::vector<std::size_t>& event_lines);

  std::vector<PaperRecord> papers_;
  std::vector<ReviewEvent> events_;
  CorpusSettings settings_;

  std::unordered_map<std::string, std::size_t> paper_lookup_;
  std::vector<std::vector<std::pair<std::string, Date>>> paper_editors_;
  std::vector<std::optional<Date>> decision_dates_;
  std::vector<Assignment> assignments_;
};

// JSONL reader/writer. One object per line with "record": "paper" | "event".
// Blank lines are ignored.
Corpus parse_jsonl(std::istream& in, CorpusSettings settings = {});
Corpus ingest(const std::filesystem::path& path, CorpusSettings settings = {});
void write_jsonl(const Corpus& corpus, std::ostream& out);

// Citations in calendar years [publication_year, publication_year + window_years].
// Throws PreconditionError unless the paper is Accepted with a publication year.
std::int64_t citation_window(const PaperRecord& paper, int window_years);

// Same window anchored at the external publication year of a rejected paper.
// std::nullopt when no external profile was supplied.
std::optional<std::int64_t> rejected_citation(const PaperRecord& paper, int window_years);

// Windowed citations for any decided paper; nullopt when unavailable.
std::optional<std::int64_t> paper_citation(const PaperRecord& paper, int window_years);

}  // namespace refaudit
