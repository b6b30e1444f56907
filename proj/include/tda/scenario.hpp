#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tda/time.hpp"

namespace tda {

enum class NodeId : std::uint32_t {};

constexpr std::uint32_t raw(NodeId id) { return static_cast<std::uint32_t>(id); }

using WindowId = std::int64_t;

enum class NodeKind { Uav, Tower };

struct Waypoint {
  double x = 0, y = 0, z = 0;  // meters
  double t = 0;                // seconds
  bool operator==(const Waypoint&) const = default;
};

struct Node {
  NodeId id{};
  std::string name;  // optional display label, unique when present
  NodeKind kind = NodeKind::Uav;
  std::vector<Waypoint> waypoints;
  std::optional<double> range;  // meters
  std::optional<double> speed;  // meters/second
  bool operator==(const Node&) const = default;
};

/// An encounter interval [start, end] between nodes a and b.
struct TimeWindow {
  WindowId wid = 0;
  NodeId a{};
  NodeId b{};
  Micros start = 0;
  Micros end = 0;

  Micros duration() const { return end - start; }
  bool involves(NodeId n) const { return a == n || b == n; }
  NodeId other(NodeId n) const { return n == a ? b : a; }
  bool operator==(const TimeWindow&) const = default;
};

/// Ground-truth attacker set with per-node forwarding delay.
struct AttackConfig {
  std::map<NodeId, Micros> delays;

  Micros delay_of(NodeId n) const {
    auto it = delays.find(n);
    return it == delays.end() ? 0 : it->second;
  }
  bool is_malicious(NodeId n) const { return delay_of(n) > 0; }
  bool operator==(const AttackConfig&) const = default;
};

struct Scenario {
  std::vector<Node> nodes;
  std::vector<TimeWindow> windows;
  Micros t_tr = kMicrosPerSecond;
  NodeId source{};
  NodeId destination{};
  Micros creation_time = 0;
  AttackConfig attack;

  const Node* find_node(NodeId id) const;
  /// Node name when present, otherwise the decimal id.
  std::string label(NodeId id) const;
  /// Resolves a name or a decimal id.
  std::optional<NodeId> resolve(std::string_view ref) const;

  bool operator==(const Scenario&) const = default;
};

/// Throws ScenarioError naming the first violated invariant.
void validate(const Scenario& s);

/// Earliest time the destination can hold the message when every relay
/// forwards at its first opportunity, or nullopt when no window sequence
/// connects source to destination.
std::optional<Micros> earliest_arrival(const Scenario& s);

}  // namespace tda
