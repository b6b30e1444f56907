#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tda/scenario.hpp"

namespace tda {

/// One holder of the message. The first record is the source at creation
/// time and carries no inbound transmission.
struct HopRecord {
  NodeId node{};
  Micros reception_time = 0;
  std::optional<std::string> window;  // split window of the inbound transmission
  std::optional<Micros> send_time;    // when the previous holder started sending

  bool operator==(const HopRecord&) const = default;
};

struct PacketTrace {
  NodeId source{};
  NodeId destination{};
  std::vector<HopRecord> hops;
  bool delivered = false;
  std::optional<Micros> physical_arrival;

  bool operator==(const PacketTrace&) const = default;
};

}  // namespace tda
