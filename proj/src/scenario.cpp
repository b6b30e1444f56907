#include "tda/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "tda/errors.hpp"

namespace tda {

const Node* Scenario::find_node(NodeId id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

std::string Scenario::label(NodeId id) const {
  if (const Node* n = find_node(id); n != nullptr && !n->name.empty()) return n->name;
  return std::to_string(raw(id));
}

std::optional<NodeId> Scenario::resolve(std::string_view ref) const {
  for (const auto& n : nodes) {
    if (!n.name.empty() && n.name == ref) return n.id;
  }
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(ref.data(), ref.data() + ref.size(), value);
  if (ec == std::errc{} && ptr == ref.data() + ref.size() && find_node(NodeId{value}) != nullptr) {
    return NodeId{value};
  }
  return std::nullopt;
}

namespace {

void fail(const std::string& msg) { throw ScenarioError(msg); }

void validate_node(const Node& n, std::size_t index) {
  const std::string where = "nodes[" + std::to_string(index) + "]";
  if (n.range && *n.range < 0) fail(where + ".range: must be non-negative");
  if (n.speed && *n.speed < 0) fail(where + ".speed: must be non-negative");
  for (std::size_t k = 1; k < n.waypoints.size(); ++k) {
    if (!(n.waypoints[k].t > n.waypoints[k - 1].t)) {
      fail(where + ".waypoints: times must strictly increase");
    }
  }
  if (n.kind == NodeKind::Tower && !n.waypoints.empty()) {
    if (n.waypoints.size() != 1) fail(where + ".waypoints: a tower has a single fixed position");
    if (n.waypoints.front().z != 0) fail(where + ".waypoints: a tower sits at z = 0");
  }
}

}  // namespace

void validate(const Scenario& s) {
  if (s.t_tr <= 0) fail("t_tr: must be positive");

  std::set<NodeId> ids;
  std::set<std::string> names;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const Node& n = s.nodes[i];
    if (!ids.insert(n.id).second) fail("nodes[" + std::to_string(i) + "].id: duplicate id " + std::to_string(raw(n.id)));
    if (!n.name.empty() && !names.insert(n.name).second) {
      fail("nodes[" + std::to_string(i) + "].name: duplicate name '" + n.name + "'");
    }
    validate_node(n, i);
  }

  if (!ids.contains(s.source)) fail("source: unknown node " + std::to_string(raw(s.source)));
  if (!ids.contains(s.destination)) fail("destination: unknown node " + std::to_string(raw(s.destination)));
  if (s.source == s.destination) fail("destination: must differ from source");

  std::set<WindowId> wids;
  for (std::size_t i = 0; i < s.windows.size(); ++i) {
    const TimeWindow& w = s.windows[i];
    const std::string where = "windows[" + std::to_string(i) + "]";
    if (!wids.insert(w.wid).second) fail(where + ".wid: duplicate window id " + std::to_string(w.wid));
    if (!ids.contains(w.a)) fail(where + ".a: unknown node " + std::to_string(raw(w.a)));
    if (!ids.contains(w.b)) fail(where + ".b: unknown node " + std::to_string(raw(w.b)));
    if (w.a == w.b) fail(where + ".b: a window joins two distinct nodes");
    if (w.start >= w.end) fail(where + ".end: start must be before end");
    if (w.duration() < s.t_tr) fail(where + ".end: window shorter than t_tr");
  }

  for (const auto& [node, delay] : s.attack.delays) {
    if (!ids.contains(node)) fail("attack: unknown node " + std::to_string(raw(node)));
    if (node == s.destination) fail("attack: the destination cannot be malicious");
    if (delay < 0) fail("attack: delay for node " + s.label(node) + " must be non-negative");
  }

  if (!earliest_arrival(s)) fail("windows: no window sequence connects source to destination");
}

std::optional<Micros> earliest_arrival(const Scenario& s) {
  std::map<NodeId, Micros> arrival{{s.source, s.creation_time}};
  // Bellman-Ford style relaxation; each pass can only lower arrivals.
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& w : s.windows) {
      for (auto [from, to] : {std::pair{w.a, w.b}, std::pair{w.b, w.a}}) {
        auto held = arrival.find(from);
        if (held == arrival.end()) continue;
        const Micros send = std::max(held->second, w.start);
        if (send + s.t_tr > w.end) continue;
        const Micros recv = send + s.t_tr;
        auto [it, inserted] = arrival.try_emplace(to, recv);
        if (inserted || recv < it->second) {
          it->second = recv;
          changed = true;
        }
      }
    }
  }
  auto it = arrival.find(s.destination);
  if (it == arrival.end()) return std::nullopt;
  return it->second;
}

}  // namespace tda
