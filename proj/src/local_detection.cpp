#include <algorithm>
#include <tuple>

#include "tda/detection.hpp"
#include "tda/errors.hpp"

namespace tda {

namespace {

const std::set<NodeId> kNoNeighbors;
const std::vector<WindowSpan> kNoWindows;

// The window the predecessor sent in: the recorded one when known, else the
// piece containing the send instant, preferring one still open after it.
const WindowSpan& inbound_window(const std::vector<WindowSpan>& ws, const LocalObservation& obs, Micros t_tr) {
  if (obs.inbound_window) {
    for (const auto& w : ws) {
      if (w.name == *obs.inbound_window) return w;
    }
    throw InconsistencyError("observer has no window " + *obs.inbound_window + " with its predecessor");
  }
  const Micros send = obs.reception_time - t_tr;
  const WindowSpan* best = nullptr;
  for (const auto& w : ws) {
    if (send < w.start || send > w.end) continue;
    if (best == nullptr) {
      best = &w;
    } else if ((send < w.end) != (send < best->end) ? send < w.end : w.start > best->start) {
      best = &w;
    }
  }
  if (best == nullptr) throw InconsistencyError("no window with the predecessor contains send time " + format_seconds(send));
  return *best;
}

}  // namespace

NeighborTables NeighborTables::build(const Twig& g) {
  NeighborTables t;
  for (const auto& w : g.windows()) {
    t.one_[w.a].insert(w.b);
    t.one_[w.b].insert(w.a);
    t.pair_[{w.a, w.b}].push_back({w.name(), w.start, w.end});
    t.pair_[{w.b, w.a}].push_back({w.name(), w.start, w.end});
  }
  for (auto& [pair, list] : t.pair_) {
    std::sort(list.begin(), list.end(), [](const WindowSpan& l, const WindowSpan& r) {
      return std::tie(l.start, l.end, l.name) < std::tie(r.start, r.end, r.name);
    });
  }
  for (const auto& [n, first] : t.one_) {
    auto& two = t.two_[n];
    for (NodeId m : first) {
      two.insert(m);
      for (NodeId k : t.one_[m]) two.insert(k);
    }
    two.erase(n);
  }
  return t;
}

const std::set<NodeId>& NeighborTables::one_hop(NodeId n) const {
  auto it = one_.find(n);
  return it == one_.end() ? kNoNeighbors : it->second;
}

const std::set<NodeId>& NeighborTables::two_hop(NodeId n) const {
  auto it = two_.find(n);
  return it == two_.end() ? kNoNeighbors : it->second;
}

const std::vector<WindowSpan>& NeighborTables::windows(NodeId a, NodeId b) const {
  auto it = pair_.find({a, b});
  return it == pair_.end() ? kNoWindows : it->second;
}

DetectionReport detect_local(const LocalObservation& obs, const HopMetadata& meta, const NeighborTables& tables,
                             Micros t_tr) {
  if (!meta.info_2) throw InconsistencyError("metadata carries no predecessor record");
  DetectionReport report;
  report.mode = DetectionMode::Local;
  report.observer = obs.observer;

  const RelayInfo& prev = *meta.info_2;
  const auto& ws = tables.windows(obs.observer, prev.node);
  if (ws.empty()) throw InconsistencyError("observer never meets its predecessor");
  const WindowSpan& in = inbound_window(ws, obs, t_tr);

  Finding f;
  f.node = prev.node;
  const Micros delta = obs.reception_time - in.start;
  if (delta == t_tr) {
    f.rule = "window-start";
    f.values = {{"delta", delta}, {"t_tr", t_tr}};
  } else if (prev.reception_time + t_tr == obs.reception_time) {
    f.rule = "immediate-forward";
    f.values = {{"prev_rt_plus_t_tr", prev.reception_time + t_tr}, {"rt", obs.reception_time}};
  } else {
    f.rule = "delayed-forward";
    f.verdict = Verdict::Malicious;
    f.values = {{"delta", delta},
                {"t_tr", t_tr},
                {"prev_rt_plus_t_tr", prev.reception_time + t_tr},
                {"rt", obs.reception_time}};
    report.flagged.insert(prev.node);
  }
  const bool predecessor_ok = f.verdict == Verdict::Benign;
  report.findings.push_back(std::move(f));

  if (predecessor_ok && meta.info_1 && meta.info_1->node != obs.observer && tables.one_hop(obs.observer).contains(meta.info_1->node)) {
    const RelayInfo& older = *meta.info_1;
    const auto& direct = tables.windows(obs.observer, older.node);
    const Micros ready = older.reception_time + t_tr;
    const WindowSpan* w = &direct.back();
    for (const auto& cand : direct) {
      if (cand.end > ready) {
        w = &cand;
        break;
      }
    }
    Finding g;
    g.node = older.node;
    g.rule = "skipped-direct";
    g.values = {{"older_rt_plus_t_tr", ready},
                {"end", w->end},
                {"prev_rt_plus_t_tr", prev.reception_time + t_tr},
                {"start", w->start}};
    if (ready < w->end && prev.reception_time + t_tr > w->start) {
      g.verdict = Verdict::Malicious;
      report.flagged.insert(older.node);
    }
    report.findings.push_back(std::move(g));
  }
  return report;
}

std::set<NodeId> LocalRun::flagged() const {
  std::set<NodeId> out;
  for (const auto& r : reports) out.insert(r.flagged.begin(), r.flagged.end());
  return out;
}

LocalRun run_local_pipeline(const Scenario& s, const Twig& g, const PacketTrace& trace) {
  LocalRun run;
  const NeighborTables tables = NeighborTables::build(g);
  const auto& hops = trace.hops;
  for (std::size_t i = 1; i < hops.size(); ++i) {
    HopMetadata meta;
    meta.info_2 = RelayInfo{hops[i - 1].node, hops[i - 1].reception_time};
    if (i >= 2) meta.info_1 = RelayInfo{hops[i - 2].node, hops[i - 2].reception_time};
    const LocalObservation obs{hops[i].node, hops[i].reception_time, hops[i].window};
    DetectionReport r = detect_local(obs, meta, tables, s.t_tr);
    for (NodeId suspect : r.flagged) {
      const auto& reach = tables.two_hop(obs.observer);
      run.alerts.push_back({suspect, obs.observer, {reach.begin(), reach.end()}});
    }
    run.reports.push_back(std::move(r));
  }
  return run;
}

}  // namespace tda
