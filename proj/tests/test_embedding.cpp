#include <doctest.h>

#include "support.hpp"
#include "tda/embedding.hpp"
#include "tda/errors.hpp"

using namespace tda;
using namespace tda::testing;

namespace {

PacketTrace hand_trace(const Scenario& s, std::initializer_list<std::pair<const char*, int>> hops) {
  PacketTrace t;
  t.source = s.source;
  t.destination = s.destination;
  for (const auto& [name, rt] : hops) t.hops.push_back({id(s, name), seconds(rt), std::nullopt, std::nullopt});
  t.delivered = t.hops.back().node == s.destination;
  return t;
}

}  // namespace

TEST_CASE("benign seven_node trace embeds onto the shortest path") {
  const Scenario s = fixture("seven_node");
  const Twig g = Twig::build(s.windows, s.t_tr);
  const auto t = hand_trace(s, {{"S", 0}, {"A", 6}, {"B", 26}, {"C", 27}, {"F", 91}});
  const auto e = embed_trace(g, t, s.t_tr);
  CHECK(labels(s, g, e.path.vertices) ==
        std::vector<std::string>{"S1", "A1", "A3.1", "B3.1", "B4", "C4", "C7", "F7"});
  CHECK(e.path.total_weight == seconds(89));
  CHECK(e.hop_position == std::vector<std::size_t>{0, 1, 3, 5, 7});
}

TEST_CASE("two-attacker trace embeds into thirteen vertices") {
  const Scenario s = fixture("seven_node");
  const Twig g = Twig::build(s.windows, s.t_tr);
  const auto t = hand_trace(s, {{"S", 0}, {"A", 6}, {"B", 31}, {"D", 36}, {"C", 61}, {"E", 117}, {"F", 151}});
  const auto e = embed_trace(g, t, s.t_tr);
  CHECK(labels(s, g, e.path.vertices) == std::vector<std::string>{"S1", "A1", "A3.1", "B3.1", "B3.2", "B5.1", "D5.1",
                                                                  "D6", "C6", "C8", "E8", "E9", "F9"});
  CHECK(e.path.total_weight == seconds(151));
}

TEST_CASE("a single hop maps to the two ends of its window") {
  const Scenario s = fixture("seven_node");
  const Twig g = Twig::build(s.windows, s.t_tr);
  const auto t = hand_trace(s, {{"C", 60}, {"D", 62}});
  const auto e = embed_trace(g, t, s.t_tr);
  CHECK(labels(s, g, e.path.vertices) == std::vector<std::string>{"C6", "D6"});
  CHECK(e.path.total_weight == seconds(1));
}

TEST_CASE("recorded window names pick the piece") {
  const Scenario s = fixture("seven_node");
  const Twig g = Twig::build(s.windows, s.t_tr);
  // A send at exactly 35 lies in both 3.1 and 3.2.
  CHECK(g.windows()[transmission_window(g, id(s, "A"), id(s, "B"), seconds(35))].name() == "3.2");
  CHECK(g.windows()[transmission_window(g, id(s, "A"), id(s, "B"), seconds(35), "3.1")].name() == "3.1");
  CHECK(g.windows()[transmission_window(g, id(s, "A"), id(s, "B"), seconds(40))].name() == "3.2");
}

TEST_CASE("inconsistent traces name the hop") {
  const Scenario s = fixture("seven_node");
  const Twig g = Twig::build(s.windows, s.t_tr);
  const auto t = hand_trace(s, {{"S", 0}, {"A", 6}, {"B", 50}});
  try {
    embed_trace(g, t, s.t_tr);
    FAIL("expected an embedding error");
  } catch (const EmbeddingError& e) {
    CHECK(std::string(e.what()).find("hop 2") != std::string::npos);
  }
  const auto backwards = hand_trace(s, {{"S", 0}, {"A", 13}, {"S", 6}});
  CHECK_THROWS_AS(embed_trace(g, backwards, s.t_tr), EmbeddingError);
}
