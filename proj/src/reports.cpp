#include "tda/reports.hpp"

#include <sstream>

#include "tda/errors.hpp"

namespace tda {

namespace {

const char* origin_name(EdgeOrigin o) {
  switch (o) {
    case EdgeOrigin::WithinWindow: return "within_window";
    case EdgeOrigin::Succession: return "succession";
    case EdgeOrigin::Containment: return "containment";
  }
  return "";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Benign: return "benign";
    case Verdict::Malicious: return "malicious";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "";
}

ordered_json node_list(const Scenario& s, const std::set<NodeId>& nodes) {
  ordered_json out = ordered_json::array();
  for (NodeId n : nodes) out.push_back(s.label(n));
  return out;
}

ordered_json finding_json(const Scenario& s, const Finding& f) {
  ordered_json j;
  j["node"] = s.label(f.node);
  j["verdict"] = verdict_name(f.verdict);
  j["rule"] = f.rule;
  ordered_json values = ordered_json::object();
  for (const auto& [k, v] : f.values) values[k] = to_seconds(v);
  j["values"] = values;
  return j;
}

ordered_json findings_json(const Scenario& s, const std::vector<Finding>& fs) {
  ordered_json out = ordered_json::array();
  for (const auto& f : fs) out.push_back(finding_json(s, f));
  return out;
}

ordered_json path_json(const Scenario& s, const Twig& g, const TwigPath& p) {
  ordered_json j;
  ordered_json vs = ordered_json::array();
  for (VertexIndex v : p.vertices) vs.push_back(vertex_label(s, g, v));
  j["vertices"] = vs;
  j["weight"] = to_seconds(p.total_weight);
  return j;
}

[[noreturn]] void fail(const std::string& m) { throw ScenarioError(m); }

NodeId node_field(const Scenario& s, const ordered_json& v, const std::string& field) {
  std::optional<NodeId> id;
  if (v.is_string()) id = s.resolve(v.get<std::string>());
  if (v.is_number_unsigned()) id = s.resolve(std::to_string(v.get<std::uint32_t>()));
  if (!id) fail(field + ": unknown node " + v.dump());
  return *id;
}

Micros time_field(const ordered_json& v, const std::string& field) {
  if (!v.is_number()) fail(field + ": expected a number");
  return from_seconds(v.get<double>());
}

}  // namespace

std::string vertex_label(const Scenario& s, const Twig& g, VertexIndex v) {
  return s.label(g.node_of(v)) + "^" + g.window_of(v).name();
}

ordered_json twig_to_json(const Scenario& s, const Twig& g) {
  ordered_json doc;
  ordered_json windows = ordered_json::array();
  for (const auto& w : g.windows()) {
    ordered_json j;
    j["wid"] = w.name();
    j["original"] = w.original;
    j["a"] = s.label(w.a);
    j["b"] = s.label(w.b);
    j["start"] = to_seconds(w.start);
    j["end"] = to_seconds(w.end);
    windows.push_back(j);
  }
  doc["split_windows"] = windows;
  ordered_json vertices = ordered_json::array();
  for (VertexIndex v = 0; v < g.vertices().size(); ++v) {
    ordered_json j;
    j["node"] = s.label(g.node_of(v));
    j["wid"] = g.window_of(v).name();
    j["start"] = to_seconds(g.window_of(v).start);
    j["end"] = to_seconds(g.window_of(v).end);
    vertices.push_back(j);
  }
  doc["vertices"] = vertices;
  ordered_json edges = ordered_json::array();
  for (const auto& e : g.edges()) {
    ordered_json j;
    j["u"] = vertex_label(s, g, e.u);
    j["v"] = vertex_label(s, g, e.v);
    j["kind"] = e.kind == EdgeKind::Directed ? "directed" : "undirected";
    j["weight"] = to_seconds(e.weight);
    j["origin"] = origin_name(e.origin);
    edges.push_back(j);
  }
  doc["edges"] = edges;
  return doc;
}

std::string twig_to_dot(const Scenario& s, const Twig& g) {
  std::ostringstream out;
  out << "digraph twig {\n";
  for (VertexIndex v = 0; v < g.vertices().size(); ++v) {
    out << "  v" << v << " [label=\"" << vertex_label(s, g, v) << "\"];\n";
  }
  for (const auto& e : g.edges()) {
    out << "  v" << e.u << " -> v" << e.v << " [label=\"" << format_seconds(e.weight) << "\"";
    if (e.kind == EdgeKind::Undirected) out << ", dir=none";
    if (e.origin == EdgeOrigin::WithinWindow) out << ", style=bold";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

ordered_json trace_to_json(const Scenario& s, const Simulation& sim) {
  const PacketTrace& t = sim.trace;
  ordered_json doc;
  doc["source"] = s.label(t.source);
  doc["destination"] = s.label(t.destination);
  ordered_json hops = ordered_json::array();
  for (const auto& h : t.hops) {
    ordered_json j;
    j["node"] = s.label(h.node);
    j["reception_time"] = to_seconds(h.reception_time);
    if (h.window) j["window"] = *h.window;
    if (h.send_time) j["send_time"] = to_seconds(*h.send_time);
    hops.push_back(j);
  }
  doc["hops"] = hops;
  doc["delivered"] = t.delivered;
  doc["physical_arrival"] = t.physical_arrival ? ordered_json(to_seconds(*t.physical_arrival)) : ordered_json();
  ordered_json delays = ordered_json::array();
  for (const auto& d : sim.delays) {
    ordered_json j;
    j["node"] = s.label(d.node);
    j["delay"] = to_seconds(d.delay);
    j["planned_window"] = d.planned_window;
    j["planned_send"] = to_seconds(d.planned_send);
    j["actual_window"] = d.actual_window ? ordered_json(*d.actual_window) : ordered_json();
    j["actual_send"] = d.actual_send ? ordered_json(to_seconds(*d.actual_send)) : ordered_json();
    j["missed"] = d.missed;
    delays.push_back(j);
  }
  doc["delays"] = delays;
  return doc;
}

PacketTrace trace_from_json(const Scenario& s, const ordered_json& doc) {
  if (!doc.is_object()) fail("trace: expected a JSON object");
  PacketTrace t;
  auto need = [&](const char* key) -> const ordered_json& {
    auto it = doc.find(key);
    if (it == doc.end()) fail(std::string("trace.") + key + ": missing");
    return *it;
  };
  t.source = node_field(s, need("source"), "trace.source");
  t.destination = node_field(s, need("destination"), "trace.destination");
  const auto& hops = need("hops");
  if (!hops.is_array() || hops.empty()) fail("trace.hops: expected a non-empty array");
  for (std::size_t i = 0; i < hops.size(); ++i) {
    const auto& h = hops[i];
    const std::string where = "trace.hops[" + std::to_string(i) + "]";
    if (!h.is_object() || !h.contains("node") || !h.contains("reception_time")) {
      fail(where + ": expected {node, reception_time}");
    }
    HopRecord r;
    r.node = node_field(s, h["node"], where + ".node");
    r.reception_time = time_field(h["reception_time"], where + ".reception_time");
    if (h.contains("window")) {
      if (!h["window"].is_string()) fail(where + ".window: expected a split window name");
      r.window = h["window"].get<std::string>();
    }
    if (h.contains("send_time")) r.send_time = time_field(h["send_time"], where + ".send_time");
    t.hops.push_back(r);
  }
  if (t.hops.front().node != t.source) fail("trace.hops[0].node: must be the source");
  const auto& delivered = need("delivered");
  if (!delivered.is_boolean()) fail("trace.delivered: expected a boolean");
  t.delivered = delivered.get<bool>();
  if (auto it = doc.find("physical_arrival"); it != doc.end() && !it->is_null()) {
    t.physical_arrival = time_field(*it, "trace.physical_arrival");
  }
  return t;
}

ordered_json global_report_to_json(const Scenario& s, const Twig& g, const DetectionReport& r) {
  ordered_json doc;
  doc["mode"] = "global";
  doc["flagged"] = node_list(s, r.flagged);
  doc["evidence"] = findings_json(s, r.evidence());
  doc["followed_path"] = r.followed ? path_json(s, g, *r.followed) : ordered_json();
  doc["shortest_path"] = r.shortest ? path_json(s, g, *r.shortest) : ordered_json();
  doc["findings"] = findings_json(s, r.findings);
  doc["inconclusive"] = r.inconclusive();
  return doc;
}

ordered_json local_run_to_json(const Scenario& s, const LocalRun& run) {
  ordered_json doc;
  doc["mode"] = "local";
  doc["flagged"] = node_list(s, run.flagged());
  ordered_json reports = ordered_json::array();
  for (const auto& r : run.reports) {
    ordered_json j;
    j["observer"] = s.label(*r.observer);
    j["flagged"] = node_list(s, r.flagged);
    j["evidence"] = findings_json(s, r.evidence());
    j["findings"] = findings_json(s, r.findings);
    reports.push_back(j);
  }
  doc["reports"] = reports;
  ordered_json alerts = ordered_json::array();
  for (const auto& a : run.alerts) {
    ordered_json j;
    j["suspect"] = s.label(a.suspect);
    j["observer"] = s.label(a.observer);
    ordered_json to = ordered_json::array();
    for (NodeId n : a.recipients) to.push_back(s.label(n));
    j["recipients"] = to;
    alerts.push_back(j);
  }
  doc["alerts"] = alerts;
  return doc;
}

ordered_json eor_to_json(std::span<const EorPoint> points) {
  ordered_json out = ordered_json::array();
  for (const auto& p : points) {
    ordered_json j;
    j["mode"] = mode_name(p.mode);
    j["hops"] = p.hops;
    j["eor"] = p.value;
    out.push_back(j);
  }
  return out;
}

std::string eor_to_csv(std::span<const EorPoint> points) {
  std::ostringstream out;
  out << "mode,hops,eor\n";
  out.precision(6);
  for (const auto& p : points) out << mode_name(p.mode) << ',' << p.hops << ',' << std::fixed << p.value << '\n';
  return out.str();
}

ordered_json score_to_json(const Score& s) {
  ordered_json j;
  j["precision"] = s.precision;
  j["recall"] = s.recall;
  return j;
}

ordered_json times_to_json(const PhaseTimes& t) {
  ordered_json j;
  j["build"] = t.build;
  j["simulate"] = t.simulate;
  j["detect_global"] = t.detect_global;
  j["detect_local"] = t.detect_local;
  return j;
}

}  // namespace tda
