#include "tda/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "tda/errors.hpp"

namespace tda {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ScenarioError(msg); }

void reject_unknown(const ordered_json& obj, const std::string& where,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (auto k : allowed) known = known || item.key() == k;
    if (!known) fail(where + "." + item.key() + ": unknown key");
  }
}

const ordered_json& require(const ordered_json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where + "." + key + ": missing");
  return *it;
}

double number(const ordered_json& v, const std::string& field) {
  if (!v.is_number()) fail(field + ": expected a number");
  return v.get<double>();
}

Micros time_value(const ordered_json& v, const std::string& field) {
  return from_seconds(number(v, field));
}

NodeId node_ref(const Scenario& s, const ordered_json& v, const std::string& field) {
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    NodeId id{v.get<std::uint32_t>()};
    if (s.find_node(id) == nullptr) fail(field + ": unknown node " + v.dump());
    return id;
  }
  if (v.is_string()) {
    if (auto id = s.resolve(v.get<std::string>())) return *id;
    fail(field + ": unknown node " + v.dump());
  }
  fail(field + ": expected a node name or id");
}

Node parse_node(const ordered_json& j, std::size_t index) {
  const std::string where = "nodes[" + std::to_string(index) + "]";
  if (!j.is_object()) fail(where + ": expected an object");
  reject_unknown(j, where, {"id", "name", "kind", "waypoints", "range", "speed"});
  Node n;
  const auto& id = require(j, where, "id");
  if (!id.is_number_unsigned()) fail(where + ".id: expected a non-negative integer");
  n.id = NodeId{id.get<std::uint32_t>()};
  if (auto it = j.find("name"); it != j.end()) {
    if (!it->is_string() || it->get<std::string>().empty()) fail(where + ".name: expected a non-empty string");
    n.name = it->get<std::string>();
  }
  if (auto it = j.find("kind"); it != j.end()) {
    const std::string kind = it->is_string() ? it->get<std::string>() : "";
    if (kind == "uav") {
      n.kind = NodeKind::Uav;
    } else if (kind == "tower") {
      n.kind = NodeKind::Tower;
    } else {
      fail(where + ".kind: expected \"uav\" or \"tower\"");
    }
  }
  if (auto it = j.find("waypoints"); it != j.end()) {
    if (!it->is_array()) fail(where + ".waypoints: expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const auto& p = (*it)[k];
      const std::string wf = where + ".waypoints[" + std::to_string(k) + "]";
      if (!p.is_array() || p.size() != 4) fail(wf + ": expected [x, y, z, t]");
      n.waypoints.push_back({number(p[0], wf), number(p[1], wf), number(p[2], wf), number(p[3], wf)});
    }
  }
  if (auto it = j.find("range"); it != j.end()) n.range = number(*it, where + ".range");
  if (auto it = j.find("speed"); it != j.end()) n.speed = number(*it, where + ".speed");
  return n;
}

ordered_json ref_json(const Scenario& s, NodeId id) {
  const Node* n = s.find_node(id);
  if (n != nullptr && !n->name.empty()) return n->name;
  return raw(id);
}

}  // namespace

Scenario scenario_from_json(const ordered_json& doc) {
  if (!doc.is_object()) fail("scenario: expected a JSON object");
  reject_unknown(doc, "scenario",
                 {"nodes", "windows", "t_tr", "source", "destination", "creation_time", "attack"});
  Scenario s;

  const auto& nodes = require(doc, "scenario", "nodes");
  if (!nodes.is_array()) fail("nodes: expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) s.nodes.push_back(parse_node(nodes[i], i));

  s.t_tr = time_value(require(doc, "scenario", "t_tr"), "t_tr");
  s.source = node_ref(s, require(doc, "scenario", "source"), "source");
  s.destination = node_ref(s, require(doc, "scenario", "destination"), "destination");
  if (auto it = doc.find("creation_time"); it != doc.end()) s.creation_time = time_value(*it, "creation_time");

  const auto& windows = require(doc, "scenario", "windows");
  if (!windows.is_array()) fail("windows: expected an array");
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const auto& j = windows[i];
    const std::string where = "windows[" + std::to_string(i) + "]";
    if (!j.is_object()) fail(where + ": expected an object");
    reject_unknown(j, where, {"wid", "a", "b", "start", "end"});
    TimeWindow w;
    const auto& wid = require(j, where, "wid");
    if (!wid.is_number_integer()) fail(where + ".wid: expected an integer");
    w.wid = wid.get<WindowId>();
    w.a = node_ref(s, require(j, where, "a"), where + ".a");
    w.b = node_ref(s, require(j, where, "b"), where + ".b");
    w.start = time_value(require(j, where, "start"), where + ".start");
    w.end = time_value(require(j, where, "end"), where + ".end");
    s.windows.push_back(w);
  }

  if (auto it = doc.find("attack"); it != doc.end()) {
    if (!it->is_object()) fail("attack: expected an object of node -> delay");
    for (const auto& item : it->items()) {
      auto id = s.resolve(item.key());
      if (!id) fail("attack." + item.key() + ": unknown node");
      s.attack.delays[*id] = time_value(item.value(), "attack." + item.key());
    }
  }

  validate(s);
  return s;
}

ordered_json scenario_to_json(const Scenario& s) {
  ordered_json doc;
  ordered_json nodes = ordered_json::array();
  for (const auto& n : s.nodes) {
    ordered_json j;
    j["id"] = raw(n.id);
    if (!n.name.empty()) j["name"] = n.name;
    j["kind"] = n.kind == NodeKind::Tower ? "tower" : "uav";
    if (!n.waypoints.empty()) {
      ordered_json pts = ordered_json::array();
      for (const auto& p : n.waypoints) pts.push_back({p.x, p.y, p.z, p.t});
      j["waypoints"] = pts;
    }
    if (n.range) j["range"] = *n.range;
    if (n.speed) j["speed"] = *n.speed;
    nodes.push_back(j);
  }
  doc["nodes"] = nodes;

  ordered_json windows = ordered_json::array();
  for (const auto& w : s.windows) {
    ordered_json j;
    j["wid"] = w.wid;
    j["a"] = ref_json(s, w.a);
    j["b"] = ref_json(s, w.b);
    j["start"] = to_seconds(w.start);
    j["end"] = to_seconds(w.end);
    windows.push_back(j);
  }
  doc["windows"] = windows;
  doc["t_tr"] = to_seconds(s.t_tr);
  doc["source"] = ref_json(s, s.source);
  doc["destination"] = ref_json(s, s.destination);
  doc["creation_time"] = to_seconds(s.creation_time);
  ordered_json attack = ordered_json::object();
  for (const auto& [node, delay] : s.attack.delays) attack[s.label(node)] = to_seconds(delay);
  doc["attack"] = attack;
  return doc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("scenario: cannot open " + path.string());
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail("scenario: malformed JSON in " + path.string() + ": " + e.what());
  }
  return scenario_from_json(doc);
}

std::string dump_scenario(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("scenario: cannot write " + path.string());
  out << dump_scenario(s);
}

}  // namespace tda
