#include <doctest.h>

#include <cmath>

#include "refaudit/error.hpp"
#include "refaudit/reviewer_metrics.hpp"
#include "support/corpus_builder.hpp"

using namespace refaudit;
using refaudit::testing::CorpusBuilder;

namespace {

Date day(int d) { return Date::from_days(15000 + d); }
DatedPair pair(int a, int b) { return {day(a), day(b)}; }

const ReviewerProfile& profile_of(const std::vector<ReviewerProfile>& all, const std::string& id) {
  for (const auto& p : all) {
    if (p.reviewer_id == id) return p;
  }
  throw std::runtime_error("missing profile " + id);
}

}  // namespace

TEST_CASE("mrat examples") {
  const std::vector<Date> a{day(0), day(100)};
  const std::vector<Date> b{day(0), day(30), day(90)};
  const std::vector<Date> c{day(3)};
  CHECK(mrat(a) == 100.0);
  CHECK(mrat(b) == 45.0);
  CHECK_FALSE(mrat(c).has_value());
}

TEST_CASE("mrsd examples") {
  const std::vector<DatedPair> one{pair(0, 17)};
  const std::vector<DatedPair> two{pair(0, 10), pair(5, 35)};
  const std::vector<DatedPair> bad{pair(10, 5)};
  CHECK(mrsd(one) == 17.0);
  CHECK(mrsd(two) == 20.0);
  CHECK_FALSE(mrsd(std::vector<DatedPair>{}).has_value());
  CHECK_THROWS_AS(mrsd(bad), PreconditionError);
}

TEST_CASE("mtd examples") {
  const std::vector<DatedPair> one{pair(0, 2)};
  const std::vector<DatedPair> two{pair(0, 4), pair(10, 20)};
  CHECK(mtd(one) == 2.0);
  CHECK(mtd(two) == 7.0);
  CHECK_FALSE(mtd(std::vector<DatedPair>{}).has_value());
}

TEST_CASE("ar and dfi examples") {
  CHECK(ar(3, 1) == 0.75);
  CHECK(ar(5, 0) == 1.0);
  CHECK_FALSE(ar(0, 0).has_value());
  CHECK(dfi(8, 2) == 0.25);
  CHECK(dfi(5, 0) == 0.0);
  CHECK(dfi(4, 4) == 1.0);
  CHECK_FALSE(dfi(0, 0).has_value());
  CHECK_THROWS_AS(dfi(2, 3), PreconditionError);
}

TEST_CASE("tdi examples") {
  SUBCASE("one paper, one keyword") {
    CorpusBuilder b;
    b.paper("P1", FinalDecision::Accepted, {"a"}, {"qcd"});
    b.editor("P1", "E1", "2005-01-01").assign("P1", "R1", "E1", "2005-01-02").report("P1", "R1", "2005-01-10");
    CHECK(tdi("R1", b.build()) == 0.0);
  }
  SUBCASE("disjoint keyword sets") {
    CorpusBuilder b;
    b.paper("P1", FinalDecision::Accepted, {"a"}, {"a", "b"});
    b.paper("P2", FinalDecision::Accepted, {"a"}, {"c", "d"});
    for (const char* p : {"P1", "P2"}) {
      b.editor(p, "E1", "2005-01-01").assign(p, "R1", "E1", "2005-01-02").report(p, "R1", "2005-01-10");
    }
    CHECK(*tdi("R1", b.build()) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  }
  SUBCASE("overlapping keyword sets") {
    CorpusBuilder b;
    b.paper("P1", FinalDecision::Accepted, {"a"}, {"a", "b"});
    b.paper("P2", FinalDecision::Accepted, {"a"}, {"a", "c"});
    for (const char* p : {"P1", "P2"}) {
      b.editor(p, "E1", "2005-01-01").assign(p, "R1", "E1", "2005-01-02").report(p, "R1", "2005-01-10");
    }
    CHECK(*tdi("R1", b.build()) == doctest::Approx(1.0397207708399179).epsilon(1e-12));
  }
  SUBCASE("no reported paper") {
    CorpusBuilder b;
    b.paper("P1");
    b.editor("P1", "E1", "2005-01-01").assign("P1", "R1", "E1", "2005-01-02").decline("P1", "R1", "E1", "2005-01-03");
    CHECK_FALSE(tdi("R1", b.build()).has_value());
  }
}

TEST_CASE("edi examples") {
  auto build = [](const std::vector<std::string>& editors) {
    CorpusBuilder b;
    for (std::size_t i = 0; i < editors.size(); ++i) {
      const auto id = "P" + std::to_string(i);
      b.paper(id);
      b.editor(id, editors[i], "2005-01-01").assign(id, "R1", editors[i], "2005-01-02");
      b.report(id, "R1", "2005-01-10");
    }
    return b.build();
  };
  CHECK(edi("R1", build({"E1", "E1", "E1"})) == 0.0);
  CHECK(*edi("R1", build({"E1", "E2", "E3"})) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  // -(0.75 ln 0.75 + 0.25 ln 0.25)
  CHECK(*edi("R1", build({"E1", "E1", "E1", "E2"})) == doctest::Approx(0.5623351446188083).epsilon(1e-12));
}

TEST_CASE("reviewer profile accounting") {
  CorpusBuilder b;
  for (int i = 0; i < 5; ++i) {
    const auto id = "P" + std::to_string(i);
    b.paper(id);
    b.editor(id, "E1", "2005-01-01");
  }
  b.assign("P0", "R1", "E1", "2005-01-02").report("P0", "R1", "2005-01-12", Verdict::Accept);
  b.assign("P1", "R1", "E1", "2005-01-22").report("P1", "R1", "2005-02-21", Verdict::Reject);
  b.assign("P2", "R1", "E1", "2005-02-01").decline("P2", "R1", "E1", "2005-02-05");
  b.assign("P3", "R1", "E1", "2005-02-11");  // agreed, never reported
  b.self_review("P4", "E1", "2005-01-03").report("P4", "E1", "2005-01-04");
  const auto all = reviewer_profiles(b.build());
  const auto& r = profile_of(all, "R1");
  CHECK(r.n_assignments == 4);
  CHECK(r.n_declines == 1);
  CHECK(r.n_reports == 2);
  CHECK(r.n_pending == 1);
  CHECK(r.n_declines + r.n_reports + r.n_pending == r.n_assignments);
  CHECK(r.mrsd == 20.0);
  CHECK(r.mtd == 4.0);
  CHECK(r.ar == 0.5);
  CHECK(r.dfi == 0.25);
  CHECK(r.mrat == 40.0 / 3.0);
  CHECK_FALSE(r.is_editor_self_review);
  CHECK(profile_of(all, "E1").is_editor_self_review);
}
