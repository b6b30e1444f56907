#include <doctest.h>

#include <filesystem>

#include "support.hpp"
#include "tda/errors.hpp"
#include "tda/scenario_io.hpp"

using namespace tda;
using tda::testing::fixture;
using nlohmann::ordered_json;

namespace {

ordered_json base_doc() { return scenario_to_json(fixture("seven_node")); }

std::string load_error(const ordered_json& doc) {
  try {
    scenario_from_json(doc);
  } catch (const ScenarioError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("seconds are held as exact microseconds") {
  CHECK(from_seconds(12.000001) == 12'000'001);
  CHECK(from_seconds(0.1) + from_seconds(0.2) == from_seconds(0.3));
  CHECK(format_seconds(seconds(31)) == "31");
  CHECK(format_seconds(500'000) == "0.5");
  CHECK(format_seconds(12'000'001) == "12.000001");
  CHECK(format_seconds(-1'500'000) == "-1.5");
}

TEST_CASE("seven_node file loads with its nine windows") {
  const Scenario s = fixture("seven_node");
  REQUIRE(s.windows.size() == 9);
  REQUIRE(s.nodes.size() == 7);
  const TimeWindow& tw1 = s.windows.front();
  CHECK(s.label(tw1.a) == "S");
  CHECK(s.label(tw1.b) == "A");
  CHECK(tw1.start == seconds(5));
  CHECK(tw1.end == seconds(8));
  CHECK(s.t_tr == seconds(1));
  CHECK(s.creation_time == 0);
  CHECK(s.find_node(s.destination)->kind == NodeKind::Tower);
}

TEST_CASE("node references accept names and ids") {
  const Scenario s = fixture("seven_node");
  CHECK(s.resolve("C") == NodeId{3});
  CHECK(s.resolve("3") == NodeId{3});
  CHECK_FALSE(s.resolve("Z").has_value());
  CHECK_FALSE(s.resolve("99").has_value());

  ordered_json doc = base_doc();
  doc["source"] = 0;
  doc["windows"][0]["a"] = 0;
  CHECK(scenario_from_json(doc) == fixture("seven_node"));
}

TEST_CASE("save then load gives an equal scenario") {
  for (const char* name : {"seven_node", "seven_node_attack_a", "seven_node_attack_ac"}) {
    const Scenario s = fixture(name);
    const auto path = std::filesystem::temp_directory_path() / (std::string("tda_roundtrip_") + name + ".json");
    save_scenario(s, path);
    CHECK(load_scenario(path) == s);
    std::filesystem::remove(path);
  }
  CHECK(fixture("seven_node_attack_ac").attack.delay_of(NodeId{3}) == seconds(6));
}

TEST_CASE("load errors name the offending field") {
  ordered_json doc = base_doc();

  SUBCASE("empty window list has no path") {
    doc["windows"] = ordered_json::array();
    CHECK(load_error(doc).find("windows") != std::string::npos);
  }
  SUBCASE("start not before end") {
    doc["windows"][2]["end"] = 25;
    CHECK(load_error(doc).find("windows[2].end") != std::string::npos);
  }
  SUBCASE("window shorter than t_tr") {
    doc["windows"][2]["end"] = 25.5;
    CHECK(load_error(doc).find("t_tr") != std::string::npos);
  }
  SUBCASE("unknown keys are rejected") {
    doc["colour"] = "red";
    CHECK(load_error(doc).find("colour") != std::string::npos);
    doc.erase("colour");
    doc["windows"][0]["weight"] = 3;
    CHECK(load_error(doc).find("windows[0].weight") != std::string::npos);
  }
  SUBCASE("unknown node") {
    doc["windows"][1]["b"] = "Q";
    CHECK(load_error(doc).find("windows[1].b") != std::string::npos);
  }
  SUBCASE("destination cannot be an attacker") {
    doc["attack"]["F"] = 2;
    CHECK(load_error(doc).find("destination") != std::string::npos);
  }
  SUBCASE("negative delay") {
    doc["attack"]["A"] = -1;
    CHECK(load_error(doc).find("attack") != std::string::npos);
  }
  SUBCASE("self window") {
    doc["windows"][0]["b"] = "S";
    CHECK(load_error(doc).find("windows[0].b") != std::string::npos);
  }
  SUBCASE("tower waypoints") {
    doc["nodes"][2]["waypoints"] = ordered_json::parse("[[0,0,5,0]]");
    CHECK(load_error(doc).find("nodes[2].waypoints") != std::string::npos);
  }
  SUBCASE("waypoint times must increase") {
    doc["nodes"][1]["waypoints"] = ordered_json::parse("[[0,0,5,3],[1,0,5,3]]");
    CHECK(load_error(doc).find("nodes[1].waypoints") != std::string::npos);
  }
  SUBCASE("duplicate ids") {
    doc["nodes"][1]["id"] = 0;
    CHECK(load_error(doc).find("nodes[1].id") != std::string::npos);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(load_scenario("/nonexistent/tda.json"), ScenarioError); }
}

TEST_CASE("earliest arrival follows first opportunities") {
  CHECK(earliest_arrival(fixture("seven_node")) == seconds(91));
  Scenario s = fixture("seven_node");
  s.creation_time = seconds(9);
  CHECK(earliest_arrival(s) == seconds(91));  // tw1 is gone but tw2 still reaches A
}
