#include <doctest.h>

#include <chrono>

#include "support.hpp"
#include "tda/detection.hpp"
#include "tda/errors.hpp"
#include "tda/generator.hpp"

using namespace tda;
using namespace tda::testing;

namespace {

Micros value(const Finding& f, const std::string& key) {
  for (const auto& [k, v] : f.values) {
    if (k == key) return v;
  }
  throw std::runtime_error("no value " + key);
}

}  // namespace

TEST_CASE("delayed forward is caught at the next hop") {
  const Scenario s = fixture("seven_node");
  const Twig g = Twig::build(s.windows, s.t_tr);
  const auto tables = NeighborTables::build(g);
  HopMetadata meta;
  meta.info_1 = RelayInfo{id(s, "S"), 0};
  meta.info_2 = RelayInfo{id(s, "A"), seconds(6)};
  const auto r = detect_local({id(s, "B"), seconds(31), "3.1"}, meta, tables, s.t_tr);
  CHECK(names(s, r.flagged) == std::set<std::string>{"A"});
  REQUIRE(r.findings.size() == 1);
  CHECK(r.findings[0].rule == "delayed-forward");
  CHECK(value(r.findings[0], "delta") == seconds(6));
  CHECK(value(r.findings[0], "prev_rt_plus_t_tr") == seconds(7));
}

TEST_CASE("arrival at window start is benign") {
  const Scenario s = fixture("seven_node");
  const Twig g = Twig::build(s.windows, s.t_tr);
  const auto tables = NeighborTables::build(g);
  HopMetadata meta;
  meta.info_2 = RelayInfo{id(s, "A"), seconds(6)};
  const auto r = detect_local({id(s, "B"), seconds(26), std::nullopt}, meta, tables, s.t_tr);
  CHECK(r.flagged.empty());
  CHECK(r.findings[0].rule == "window-start");
}

TEST_CASE("immediate forward is benign") {
  const Scenario s = fixture("seven_node");
  const Twig g = Twig::build(s.windows, s.t_tr);
  const auto tables = NeighborTables::build(g);
  HopMetadata meta;
  meta.info_2 = RelayInfo{id(s, "B"), seconds(27)};
  const auto r = detect_local({id(s, "C"), seconds(28), "4"}, meta, tables, s.t_tr);
  CHECK(r.flagged.empty());
  CHECK(r.findings[0].rule == "immediate-forward");
}

TEST_CASE("skipped direct window is caught two hops later") {
  const Scenario s = fixture("seven_node");
  const Twig g = Twig::build(s.windows, s.t_tr);
  const auto tables = NeighborTables::build(g);
  HopMetadata meta;
  meta.info_1 = RelayInfo{id(s, "C"), seconds(61)};
  meta.info_2 = RelayInfo{id(s, "E"), seconds(117)};
  const auto r = detect_local({id(s, "F"), seconds(151), "9"}, meta, tables, s.t_tr);
  CHECK(names(s, r.flagged) == std::set<std::string>{"C"});
  REQUIRE(r.findings.size() == 2);
  const Finding& f = r.findings[1];
  CHECK(f.rule == "skipped-direct");
  CHECK(value(f, "older_rt_plus_t_tr") == seconds(62));
  CHECK(value(f, "end") == seconds(95));
  CHECK(value(f, "prev_rt_plus_t_tr") == seconds(118));
  CHECK(value(f, "start") == seconds(90));
}

TEST_CASE("seven_node pipelines") {
  {
    const Scenario s = fixture("seven_node");
    const Twig g = Twig::build(s.windows, s.t_tr);
    const auto run = run_local_pipeline(s, g, simulate(s, g));
    CHECK(run.flagged().empty());
    CHECK(run.alerts.empty());
    CHECK(run.reports.size() == 4);
  }
  {
    const Scenario s = fixture("seven_node_attack_a");
    const Twig g = Twig::build(s.windows, s.t_tr);
    const auto run = run_local_pipeline(s, g, simulate(s, g));
    CHECK(names(s, run.flagged()) == std::set<std::string>{"A"});
  }
  const Scenario s = fixture("seven_node_attack_ac");
  const Twig g = Twig::build(s.windows, s.t_tr);
  const auto run = run_local_pipeline(s, g, simulate(s, g));
  CHECK(names(s, run.flagged()) == std::set<std::string>{"A", "C"});
  REQUIRE(run.reports.size() == 6);
  // observers A, B, D, C, E, F
  CHECK(run.reports[0].flagged.empty());
  CHECK(names(s, run.reports[1].flagged) == std::set<std::string>{"A"});
  CHECK(run.reports[3].flagged.empty());
  CHECK(names(s, run.reports[4].flagged) == std::set<std::string>{"C"});
  CHECK(names(s, run.reports[5].flagged) == std::set<std::string>{"C"});
  REQUIRE(run.alerts.size() == 3);
  const Alert& first = run.alerts[0];
  CHECK(first.suspect == id(s, "A"));
  CHECK(first.observer == id(s, "B"));
  std::set<std::string> recipients;
  for (NodeId n : first.recipients) recipients.insert(s.label(n));
  CHECK(recipients == std::set<std::string>{"S", "A", "C", "D", "E", "F"});
}

TEST_CASE("inconsistent metadata is reported") {
  const Scenario s = fixture("seven_node");
  const Twig g = Twig::build(s.windows, s.t_tr);
  const auto tables = NeighborTables::build(g);
  HopMetadata meta;
  meta.info_2 = RelayInfo{id(s, "S"), 0};
  CHECK_THROWS_AS(detect_local({id(s, "F"), seconds(10), std::nullopt}, meta, tables, s.t_tr), InconsistencyError);
  meta.info_2 = RelayInfo{id(s, "A"), seconds(6)};
  CHECK_THROWS_AS(detect_local({id(s, "B"), seconds(60), std::nullopt}, meta, tables, s.t_tr), InconsistencyError);
  CHECK_THROWS_AS(detect_local({id(s, "B"), seconds(30), "9"}, meta, tables, s.t_tr), InconsistencyError);
  CHECK_THROWS_AS(detect_local({id(s, "B"), seconds(30), std::nullopt}, HopMetadata{}, tables, s.t_tr),
                  InconsistencyError);
}

TEST_CASE("local precision on generated runs") {
  for (int row = 1; row <= 5; ++row) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const Scenario s = generate(*preset("table2-row" + std::to_string(row), seed));
      const Twig g = Twig::build(s.windows, s.t_tr);
      const auto run = run_local_pipeline(s, g, simulate(s, g));
      for (NodeId n : run.flagged()) REQUIRE(s.attack.is_malicious(n));
    }
  }
}
