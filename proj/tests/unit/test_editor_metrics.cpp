#include <doctest.h>

#include <cmath>
#include <vector>

#include "refaudit/editor_metrics.hpp"
#include "refaudit/error.hpp"
#include "support/corpus_builder.hpp"

using namespace refaudit;
using refaudit::testing::CorpusBuilder;

namespace {

std::vector<Date> days(std::initializer_list<int> offsets) {
  std::vector<Date> out;
  for (int d : offsets) out.push_back(Date::from_days(14000 + d));
  return out;
}

const EditorProfile& profile_of(const std::vector<EditorProfile>& all, const std::string& id) {
  for (const auto& p : all) {
    if (p.editor_id == id) return p;
  }
  throw std::runtime_error("missing profile " + id);
}

}  // namespace

TEST_CASE("meat examples") {
  CHECK(meat(days({0, 10, 20})) == 10.0);
  const std::vector<Date> cal{Date::parse("2010-01-01"), Date::parse("2010-01-11"), Date::parse("2010-02-10")};
  CHECK(meat(cal) == 20.0);
  CHECK_FALSE(meat(days({5})).has_value());
  CHECK_THROWS_AS(meat(days({10, 0})), PreconditionError);
}

TEST_CASE("meat ignores a common shift") {
  CHECK(meat(days({0, 7, 30, 31})) == meat(days({100, 107, 130, 131})));
}

TEST_CASE("sri examples") {
  CHECK(sri(10, 2) == 0.2);
  CHECK(sri(7, 0) == 0.0);
  CHECK(sri(4, 4) == 1.0);
  CHECK_FALSE(sri(0, 0).has_value());
  CHECK_THROWS_AS(sri(3, 4), PreconditionError);
}

TEST_CASE("rdi examples") {
  SUBCASE("always the same reviewer") {
    CorpusBuilder b;
    for (int i = 0; i < 3; ++i) {
      const auto id = "P" + std::to_string(i);
      b.paper(id);
      b.editor(id, "E1", "2005-01-01").assign(id, "R", "E1", "2005-01-02").report(id, "R", "2005-01-10");
    }
    CHECK(rdi("E1", b.build()) == 0.0);
  }
  SUBCASE("four distinct reviewers") {
    CorpusBuilder b;
    b.paper("P1");
    b.editor("P1", "E1", "2005-01-01");
    for (const char* r : {"R1", "R2", "R3", "R4"}) b.assign("P1", r, "E1", "2005-01-02").report("P1", r, "2005-01-09");
    CHECK(*rdi("E1", b.build()) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  }
  SUBCASE("counts 2, 1, 1") {
    CorpusBuilder b;
    b.paper("P1");
    b.paper("P2");
    b.editor("P1", "E1", "2005-01-01").editor("P2", "E1", "2005-01-01");
    b.assign("P1", "R1", "E1", "2005-01-02").report("P1", "R1", "2005-01-05");
    b.assign("P2", "R1", "E1", "2005-01-02").report("P2", "R1", "2005-01-05");
    b.assign("P1", "R2", "E1", "2005-01-02").report("P1", "R2", "2005-01-05");
    b.assign("P2", "R3", "E1", "2005-01-02").report("P2", "R3", "2005-01-05");
    CHECK(*rdi("E1", b.build()) == doctest::Approx(1.0397207708399179).epsilon(1e-12));
  }
  SUBCASE("no reviewer assignments") {
    CorpusBuilder b;
    b.paper("P1");
    b.editor("P1", "E1", "2005-01-01");
    CHECK_FALSE(rdi("E1", b.build()).has_value());
  }
}

TEST_CASE("declines count toward diversity only when asked") {
  CorpusBuilder b;
  b.paper("P1");
  b.editor("P1", "E1", "2005-01-01");
  b.assign("P1", "R1", "E1", "2005-01-02").decline("P1", "R1", "E1", "2005-01-03");
  b.assign("P1", "R2", "E1", "2005-01-04").report("P1", "R2", "2005-01-20");
  const auto c = b.build();
  CHECK(rdi("E1", c) == 0.0);
  CHECK(*rdi("E1", c, {true, {}}) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("radi examples") {
  SUBCASE("one single-author paper, one reviewer") {
    CorpusBuilder b;
    b.paper("P1", FinalDecision::Accepted, {"a"});
    b.editor("P1", "E1", "2005-01-01").assign("P1", "R1", "E1", "2005-01-02").report("P1", "R1", "2005-01-09");
    CHECK(radi("E1", b.build()) == 0.0);
  }
  SUBCASE("two single-author papers, same reviewer") {
    CorpusBuilder b;
    b.paper("P1", FinalDecision::Accepted, {"a"});
    b.paper("P2", FinalDecision::Accepted, {"b"});
    for (const char* p : {"P1", "P2"}) {
      b.editor(p, "E1", "2005-01-01").assign(p, "R1", "E1", "2005-01-02").report(p, "R1", "2005-01-09");
    }
    CHECK(*radi("E1", b.build()) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("pairs from a two-author paper and a solo paper") {
    CorpusBuilder b;
    b.paper("P1", FinalDecision::Accepted, {"a", "b"});
    b.paper("P2", FinalDecision::Accepted, {"a"});
    b.editor("P1", "E1", "2005-01-01").assign("P1", "R1", "E1", "2005-01-02").report("P1", "R1", "2005-01-09");
    b.editor("P2", "E1", "2005-01-01").assign("P2", "R2", "E1", "2005-01-02").report("P2", "R2", "2005-01-09");
    CHECK(*radi("E1", b.build()) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  }
}

TEST_CASE("editor profiles") {
  CorpusBuilder b;
  for (int i = 0; i < 4; ++i) {
    const auto id = "P" + std::to_string(i);
    b.paper(id);
    const auto day = "2005-01-0" + std::to_string(1 + 2 * i);
    b.editor(id, "E1", day);
  }
  b.self_review("P0", "E1", "2005-01-02").report("P0", "E1", "2005-01-05");
  b.assign("P1", "R1", "E1", "2005-01-04").decline("P1", "R1", "E1", "2005-01-05");
  b.paper("Q", FinalDecision::Withdrawn);
  b.editor("Q", "E2", "2005-01-01");
  const auto all = editor_profiles(b.build());
  const auto& e1 = profile_of(all, "E1");
  CHECK(e1.n_assignments == 4);
  CHECK(e1.n_self_reviewed == 1);
  CHECK(e1.meat == 2.0);
  CHECK(e1.sri == 0.25);
  CHECK(e1.n_declines_received == 1);
  CHECK(e1.rdi == 0.0);
  for (const auto& p : all) CHECK(p.editor_id != "E2");  // only decided papers count
}

TEST_CASE("per-editor locality") {
  CorpusBuilder b;
  for (int i = 0; i < 6; ++i) {
    const auto id = "P" + std::to_string(i);
    const auto editor = i % 2 ? "E1" : "E2";
    b.paper(id, FinalDecision::Accepted, {"a" + std::to_string(i % 3)});
    b.editor(id, editor, "2005-02-0" + std::to_string(i + 1));
    b.assign(id, "R" + std::to_string(i % 4), editor, "2005-03-01").report(id, "R" + std::to_string(i % 4), "2005-03-09");
  }
  const auto full = b.build();
  CorpusBuilder only;
  for (int i = 1; i < 6; i += 2) {
    const auto id = "P" + std::to_string(i);
    only.paper(id, FinalDecision::Accepted, {"a" + std::to_string(i % 3)});
    only.editor(id, "E1", "2005-02-0" + std::to_string(i + 1));
    only.assign(id, "R" + std::to_string(i % 4), "E1", "2005-03-01").report(id, "R" + std::to_string(i % 4), "2005-03-09");
  }
  const auto a = profile_of(editor_profiles(full), "E1");
  const auto c = profile_of(editor_profiles(only.build()), "E1");
  CHECK(a.meat == c.meat);
  CHECK(a.rdi == c.rdi);
  CHECK(a.radi == c.radi);
  CHECK(a.sri == c.sri);
}
