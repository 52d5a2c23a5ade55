#pragma once

// Terse construction of hand-written corpora for fixtures.

#include <string>
#include <vector>

#include "refaudit/ledger.hpp"

namespace refaudit::testing {

class CorpusBuilder {
 public:
  PaperRecord& paper(const std::string& id, FinalDecision decision = FinalDecision::Accepted,
                     std::vector<std::string> authors = {"a1"}, std::vector<std::string> keywords = {"k1"},
                     const std::string& submitted = "2005-01-01") {
    PaperRecord p;
    p.paper_id = id;
    p.final_decision = decision;
    p.author_ids = std::move(authors);
    p.keywords = std::move(keywords);
    p.submission_date = Date::parse(submitted);
    if (decision == FinalDecision::Accepted) p.publication_year = p.submission_date.year();
    papers_.push_back(std::move(p));
    return papers_.back();
  }

  CorpusBuilder& editor(const std::string& paper, const std::string& editor, const std::string& date) {
    return add(paper, editor, EventKind::EditorAssigned, date);
  }
  CorpusBuilder& assign(const std::string& paper, const std::string& reviewer, const std::string& editor,
                        const std::string& date) {
    return add(paper, reviewer, EventKind::ReviewerAssigned, date, std::nullopt, editor);
  }
  CorpusBuilder& self_review(const std::string& paper, const std::string& editor, const std::string& date) {
    return add(paper, editor, EventKind::SelfReviewAssigned, date, std::nullopt, editor);
  }
  CorpusBuilder& decline(const std::string& paper, const std::string& reviewer, const std::string& editor,
                         const std::string& date) {
    return add(paper, reviewer, EventKind::ReviewerDeclined, date, std::nullopt, editor);
  }
  CorpusBuilder& report(const std::string& paper, const std::string& reviewer, const std::string& date,
                        Verdict verdict = Verdict::Accept) {
    return add(paper, reviewer, EventKind::ReportReceived, date, verdict);
  }
  CorpusBuilder& decide(const std::string& paper, const std::string& editor, const std::string& date,
                        Verdict verdict) {
    return add(paper, editor, EventKind::FinalDecision, date, verdict);
  }

  Corpus build(CorpusSettings settings = {}) const { return Corpus(papers_, events_, settings); }

  std::vector<PaperRecord>& papers() { return papers_; }
  std::vector<ReviewEvent>& events() { return events_; }

 private:
  CorpusBuilder& add(const std::string& paper, const std::string& actor, EventKind kind, const std::string& date,
                     std::optional<Verdict> payload = std::nullopt,
                     std::optional<std::string> assigning = std::nullopt) {
    ReviewEvent e;
    e.paper_id = paper;
    e.actor_id = actor;
    e.kind = kind;
    e.date = Date::parse(date);
    e.decision_payload = payload;
    e.assigning_editor_id = std::move(assigning);
    events_.push_back(std::move(e));
    return *this;
  }

  std::vector<PaperRecord> papers_;
  std::vector<ReviewEvent> events_;
};

}  // namespace refaudit::testing
