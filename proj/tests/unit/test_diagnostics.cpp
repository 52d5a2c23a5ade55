#include <doctest.h>

#include <random>

#include "oracles/mac_oracle.hpp"
#include "refaudit/diagnostics.hpp"
#include "refaudit/error.hpp"
#include "refaudit/stats.hpp"
#include "support/corpus_builder.hpp"

using namespace refaudit;
using refaudit::testing::CorpusBuilder;

namespace {

PaperOutcome acc(std::int64_t c) { return {FinalDecision::Accepted, c}; }
PaperOutcome rej(std::optional<std::int64_t> c) { return {FinalDecision::Rejected, c}; }

}  // namespace

TEST_CASE("mac_by_bin examples") {
  SUBCASE("one agent under tenths") {
    const auto bins = mac_by_bin({{"A", 0.5}}, {{"A", {acc(10), acc(20)}}}, BinningScheme::parse("tenths"));
    REQUIRE(bins.size() == 1);
    CHECK(bins[0].bin_lower == doctest::Approx(0.5));
    CHECK(bins[0].bin_upper == doctest::Approx(0.6));
    CHECK(bins[0].n_agents == 1);
    CHECK(bins[0].mac_accepted == 15.0);
    CHECK_FALSE(bins[0].mac_rejected.has_value());
  }
  SUBCASE("median of two agents") {
    const auto bins = mac_by_bin({{"A", 0.31}, {"B", 0.35}}, {{"A", {acc(4)}}, {"B", {acc(8), acc(12)}}},
                                 BinningScheme::parse("tenths"));
    REQUIRE(bins.size() == 1);
    CHECK(bins[0].mac_accepted == 7.0);
  }
  SUBCASE("only rejected papers") {
    const auto bins = mac_by_bin({{"A", 3.0}}, {{"A", {rej(5), rej(std::nullopt)}}}, BinningScheme::parse("equal-width:4"));
    CHECK_FALSE(bins[0].mac_accepted.has_value());
    CHECK(bins[0].mac_rejected == 5.0);
  }
  SUBCASE("empty agent set") {
    CHECK(mac_by_bin({}, {}, BinningScheme::parse("equal-width:5")).empty());
  }
}

TEST_CASE("tenths buckets place boundary values upward") {
  const auto layout = layout_bins({{"a", 0.0}, {"b", 0.7}, {"c", 0.3}, {"d", 1.0}}, BinningScheme::parse("tenths"));
  REQUIRE(layout.bounds.size() == 10);
  CHECK(layout.agent_bin.at("a") == 0);
  CHECK(layout.agent_bin.at("c") == 3);
  CHECK(layout.agent_bin.at("b") == 7);
  CHECK(layout.agent_bin.at("d") == 9);  // clamped into the last bucket
}

TEST_CASE("equal-width clamps values outside a configured range") {
  const auto layout = layout_bins({{"lo", -5.0}, {"mid", 50.0}, {"hi", 900.0}},
                                  BinningScheme::parse("equal-width:10:0:100"));
  CHECK(layout.agent_bin.at("lo") == 0);
  CHECK(layout.agent_bin.at("mid") == 5);
  CHECK(layout.agent_bin.at("hi") == 9);
}

TEST_CASE("equal-count keeps ties together") {
  AgentMetric m;
  for (int i = 0; i < 10; ++i) m["a" + std::to_string(i)] = i < 6 ? 1.0 : 2.0 + i;
  const auto layout = layout_bins(m, BinningScheme::parse("equal-count:4"));
  for (int i = 1; i < 6; ++i) CHECK(layout.agent_bin.at("a" + std::to_string(i)) == layout.agent_bin.at("a0"));
  for (std::size_t b = 0; b + 1 < layout.bounds.size(); ++b) CHECK(layout.bounds[b].second <= layout.bounds[b + 1].first);
}

TEST_CASE("conservation and brute-force agreement on random metrics") {
  std::mt19937_64 rng(5);
  for (const char* scheme_text : {"equal-width:7", "tenths", "equal-count:5", "equal-width:3:0.2:0.6"}) {
    for (int trial = 0; trial < 40; ++trial) {
      AgentMetric metric;
      std::map<std::string, std::vector<oracle::PaperCite>> raw;
      AgentPapers papers;
      const int n = 1 + static_cast<int>(rng() % 40);
      for (int i = 0; i < n; ++i) {
        const auto id = "a" + std::to_string(i);
        metric[id] = static_cast<double>(rng() % 1000) / 1000.0;
        for (int k = static_cast<int>(rng() % 4); k > 0; --k) {
          const bool accepted = rng() % 2;
          const auto c = static_cast<std::int64_t>(rng() % 50);
          papers[id].push_back({accepted ? FinalDecision::Accepted : FinalDecision::Rejected, c});
          raw[id].push_back({accepted, c});
        }
      }
      const auto scheme = BinningScheme::parse(scheme_text);
      const auto bins = mac_by_bin(metric, papers, scheme);
      std::int64_t total = 0;
      for (const auto& b : bins) total += b.n_agents;
      CHECK(total == n);
      const auto expect = oracle::mac(metric, raw, bins, scheme.kind == BinningKind::EqualCountBuckets ? 0.0 : 1e-9);
      for (std::size_t b = 0; b < bins.size(); ++b) {
        CHECK(bins[b].n_agents == expect[b].n_agents);
        CHECK(bins[b].mac_accepted.has_value() == expect[b].mac_accepted.has_value());
        if (bins[b].mac_accepted) CHECK(*bins[b].mac_accepted == doctest::Approx(*expect[b].mac_accepted).epsilon(1e-12));
        if (bins[b].mac_rejected) CHECK(*bins[b].mac_rejected == doctest::Approx(*expect[b].mac_rejected).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("mac is invariant under agent relabeling") {
  const auto a = mac_by_bin({{"x", 0.1}, {"y", 0.12}, {"z", 0.15}}, {{"x", {acc(1)}}, {"y", {acc(5)}}, {"z", {acc(9)}}},
                            BinningScheme::parse("tenths"));
  const auto b = mac_by_bin({{"p", 0.15}, {"q", 0.1}, {"r", 0.12}}, {{"p", {acc(9)}}, {"q", {acc(1)}}, {"r", {acc(5)}}},
                            BinningScheme::parse("tenths"));
  CHECK(a[0].mac_accepted == b[0].mac_accepted);
}

TEST_CASE("binning scheme parsing") {
  CHECK(BinningScheme::parse("equal-width:12").n_bins == 12);
  CHECK(BinningScheme::parse("tenths:0:1").range == std::make_pair(0.0, 1.0));
  CHECK(BinningScheme::parse("equal-count:3").kind == BinningKind::EqualCountBuckets);
  for (const char* bad : {"", "equal-width", "equal-width:0", "tenths:1:0", "bogus:3", "equal-width:x"}) {
    CHECK_THROWS_AS(BinningScheme::parse(bad), ConfigError);
  }
}

TEST_CASE("declines by month") {
  CorpusBuilder empty;
  empty.paper("P0");
  const auto none = declines_by_month(empty.build());
  CHECK(none.size() == 12);
  for (const auto& [m, n] : none) CHECK(n == 0);

  CorpusBuilder b;
  for (const char* p : {"P1", "P2", "P3"}) {
    b.paper(p);
    b.editor(p, "E1", "2010-06-01");
  }
  b.assign("P1", "R1", "E1", "2010-06-30").decline("P1", "R1", "E1", "2010-07-01");
  b.assign("P2", "R1", "E1", "2010-07-10").decline("P2", "R1", "E1", "2010-07-15");
  b.assign("P3", "R2", "E1", "2011-08-01").decline("P3", "R2", "E1", "2011-08-03");
  const auto months = declines_by_month(b.build());
  CHECK(months.at(7) == 2);
  CHECK(months.at(8) == 1);
  CHECK(months.at(1) == 0);
}

TEST_CASE("rdi versus declines") {
  CorpusBuilder single;
  single.paper("P1");
  single.editor("P1", "E1", "2005-01-01").assign("P1", "R1", "E1", "2005-01-02").report("P1", "R1", "2005-01-10");
  const auto rows = rdi_vs_declines(single.build());
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].editor_id == "E1");
  CHECK(rows[0].rdi == 0.0);
  CHECK(rows[0].n_declines_received == 0);
  CHECK(rdi_vs_declines(Corpus{}).empty());
}

TEST_CASE("declines rising with pool diversity correlate positively with rdi") {
  // Editor e draws reviewers from a pool of e + 1 and each assignment is
  // declined with probability 0.08 e.
  std::mt19937_64 rng(12);
  CorpusBuilder b;
  int paper = 0;
  for (int e = 0; e < 10; ++e) {
    const auto editor = "E" + std::to_string(e);
    for (int k = 0; k < 30; ++k) {
      const auto id = "P" + std::to_string(paper++);
      b.paper(id);
      b.editor(id, editor, "2005-01-01");
      while (true) {
        const auto reviewer = "R" + std::to_string(rng() % static_cast<unsigned>(e + 1));
        b.assign(id, reviewer, editor, "2005-01-02");
        if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.08 * e) {
          b.decline(id, reviewer, editor, "2005-01-02");
          continue;
        }
        b.report(id, reviewer, "2005-01-20");
        break;
      }
    }
  }
  const auto rows = rdi_vs_declines(b.build());
  REQUIRE(rows.size() == 10);
  std::vector<double> x, y;
  for (const auto& r : rows) {
    x.push_back(r.rdi);
    y.push_back(static_cast<double>(r.n_declines_received));
  }
  CHECK(stats::spearman(x, y) > 0.8);
}

TEST_CASE("dormant reviewers") {
  CorpusBuilder b;
  for (const char* p : {"P1", "P2", "P3"}) {
    b.paper(p);
    b.editor(p, "E1", "2009-01-01");
  }
  b.assign("P1", "Rdone", "E1", "2009-06-01").report("P1", "Rdone", "2009-07-01");
  b.assign("P2", "Rsilent", "E1", "2009-06-01");
  b.assign("P3", "Rrecent", "E1", "2011-06-01").report("P3", "Rrecent", "2011-07-01");
  const auto dormant = dormant_reviewers(b.build(), Date::parse("2012-06-01"), 2);
  REQUIRE(dormant.size() == 2);
  CHECK(dormant[0].reviewer_id == "Rdone");
  CHECK_FALSE(dormant[0].agreed_without_report);
  CHECK(dormant[1].reviewer_id == "Rsilent");
  CHECK(dormant[1].agreed_without_report);
}

TEST_CASE("citation cdf examples") {
  using Steps = std::vector<std::pair<double, double>>;
  CHECK(citation_cdf(std::vector<double>{5}) == Steps{{5, 1.0}});
  CHECK(citation_cdf(std::vector<double>{1, 2, 2, 4}) == Steps{{1, 0.25}, {2, 0.75}, {4, 1.0}});
  CHECK(citation_cdf(std::vector<double>{3, 3, 3}) == Steps{{3, 1.0}});
  CHECK_THROWS_AS(citation_cdf(std::vector<double>{}), PreconditionError);
  const auto steps = citation_cdf(std::vector<double>{1, 2, 2, 4});
  CHECK(cdf_at(steps, 0.5) == 0.0);
  CHECK(cdf_at(steps, 3.0) == 0.75);
  CHECK(ks_statistic(std::vector<double>{1, 2, 3}, std::vector<double>{4, 5}) == 1.0);
  CHECK(ks_statistic(std::vector<double>{1, 2}, std::vector<double>{1, 2}) == 0.0);
}
