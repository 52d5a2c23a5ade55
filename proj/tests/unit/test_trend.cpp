#include <doctest.h>

#include "oracles/trend_oracle.hpp"
#include "refaudit/error.hpp"
#include "refaudit/trend.hpp"
#include "support/corpus_builder.hpp"

using namespace refaudit;
using refaudit::testing::CorpusBuilder;

namespace {

TrendCategory classify(std::vector<double> v) { return classify_trend({"r", std::move(v)}).category; }

std::vector<double> scaled(std::vector<double> v, double k) {
  for (auto& x : v) x *= k;
  return v;
}

}  // namespace

TEST_CASE("hand examples") {
  CHECK(classify({50, 40, 30, 20, 10}) == TrendCategory::ConstantDecline);
  CHECK(classify({10, 12, 15, 20, 30}) == TrendCategory::NoDecline);
  CHECK(classify({5, 5, 5, 5, 5}) == TrendCategory::NoDecline);
  CHECK(classify({40, 40, 41, 40, 8, 7, 8, 7, 8}) == TrendCategory::GoodThenDecline);
  CHECK(classify({30, 5, 28, 4, 20, 3, 18, 2, 15}) == TrendCategory::FluctuatingDecline);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(classify({3, 2, 1}), PreconditionError);
  CHECK_THROWS_AS(classify({5, 4, -1, 2, 1}), PreconditionError);
  CHECK_NOTHROW(classify_trend({"r", {3, 2, 1}}, {.min_length = 3}));
}

TEST_CASE("statistics agree with the oracle") {
  oracle::Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const auto y = i % 2 ? oracle::noisy_decline(rng) : oracle::increasing(rng);
    const auto s = trend_statistics(y);
    const auto o = oracle::trend_stats(y);
    CHECK(s.slope == doctest::Approx(o.slope).epsilon(1e-9));
    CHECK(s.spearman == doctest::Approx(o.rho).epsilon(1e-9));
    CHECK(s.residual_cv == doctest::Approx(o.cv).epsilon(1e-9));
    CHECK(s.first_mean == doctest::Approx(o.m1).epsilon(1e-9));
    CHECK(s.last_mean == doctest::Approx(o.m3).epsilon(1e-9));
    CHECK(s.strictly_decreasing == o.strictly_decreasing);
  }
}

TEST_CASE("generated fixtures land in their category, at any scale") {
  oracle::Rng rng(8);
  const std::pair<TrendCategory, std::vector<double> (*)(oracle::Rng&)> cases[] = {
      {TrendCategory::ConstantDecline, oracle::monotone_decline},
      {TrendCategory::GoodThenDecline, oracle::step_down},
      {TrendCategory::FluctuatingDecline, oracle::noisy_decline},
      {TrendCategory::NoDecline, oracle::increasing},
  };
  for (const auto& [expected, make] : cases) {
    for (int i = 0; i < 25; ++i) {
      const auto y = make(rng);
      CHECK(classify(y) == expected);
      CHECK(classify(scaled(y, 7.0)) == expected);
    }
  }
}

TEST_CASE("resample") {
  CHECK(resample({0, 10}, 3) == std::vector<double>{0, 5, 10});
  CHECK(resample({4}, 3) == std::vector<double>{4, 4, 4});
  const auto r = resample({1, 2, 3, 4, 5}, 20);
  CHECK(r.size() == 20);
  CHECK(r.front() == 1.0);
  CHECK(r.back() == 5.0);
}

TEST_CASE("category profiles omit empty categories") {
  std::vector<ClassifiedSequence> seqs;
  seqs.push_back({{"a", {10, 8, 6, 4, 2}}, classify_trend({"a", {10, 8, 6, 4, 2}})});
  seqs.push_back({{"b", {20, 16, 12, 8, 4}}, classify_trend({"b", {20, 16, 12, 8, 4}})});
  const auto profiles = category_profiles(seqs, 5);
  REQUIRE(profiles.size() == 1);
  CHECK(profiles.at(TrendCategory::ConstantDecline) == std::vector<double>{15, 12, 9, 6, 3});
}

TEST_CASE("accepted sequences follow decision order") {
  CorpusBuilder b;
  const char* ids[] = {"P3", "P1", "P2", "P4"};
  const char* dates[] = {"2005-03-01", "2005-01-01", "2005-02-01", "2005-04-01"};
  for (int i = 0; i < 4; ++i) {
    auto& p = b.paper(ids[i], i == 3 ? FinalDecision::Rejected : FinalDecision::Accepted);
    if (i != 3) p.citations_by_year[2005] = 10 * (i + 1);
    b.editor(ids[i], "E1", "2005-01-01").assign(ids[i], "R1", "E1", "2005-01-01");
    b.report(ids[i], "R1", "2005-01-01");
    b.decide(ids[i], "E1", dates[i], i == 3 ? Verdict::Reject : Verdict::Accept);
  }
  const auto seqs = accepted_sequences(b.build(), {"R1", "R9"});
  REQUIRE(seqs.size() == 2);
  CHECK(seqs[0].values == std::vector<double>{20, 30, 10});
  CHECK(seqs[1].values.empty());

  const auto report = profile_reviewers(b.build(), {"R1"});
  CHECK(report.classified.empty());
  REQUIRE(report.excluded.size() == 1);
  CHECK(report.excluded[0].reviewer_id == "R1");
}
