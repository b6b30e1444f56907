#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tda/scenario.hpp"
#include "tda/trace.hpp"
#include "tda/twig.hpp"

namespace tda {

struct NextHop {
  NodeId neighbor{};
  WindowIndex window = 0;  // split window of the planned transmission
  Micros send_time = 0;    // max(now, start of that window)
};

/// First physical hop of the cheapest feasible path from (holder, now) to the
/// destination. With `receive_vertex` the search starts at that vertex;
/// otherwise at every vertex of the holder still open at `now`.
std::optional<NextHop> benign_next_hop(const Scenario& s, const Twig& g, NodeId holder, Micros now,
                                       std::optional<VertexIndex> receive_vertex = std::nullopt);

/// One forwarding decision taken by a delaying node.
struct DelayEvent {
  NodeId node{};
  Micros delay = 0;
  std::string planned_window;
  Micros planned_send = 0;
  std::optional<std::string> actual_window;  // nullopt when the message was dropped
  std::optional<Micros> actual_send;
  bool missed = false;  // the planned window could not carry the delayed send
};

struct Simulation {
  PacketTrace trace;
  std::vector<DelayEvent> delays;
};

Simulation simulate_detailed(const Scenario& s, const Twig& g);
PacketTrace simulate(const Scenario& s, const Twig& g);

}  // namespace tda
