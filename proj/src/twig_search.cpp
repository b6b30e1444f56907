#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

#include "tda/twig.hpp"

namespace tda {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Label {
  Micros weight = 0;
  std::size_t hops = 0;
  Micros clock = 0;
  VertexIndex vertex = 0;
  std::size_t parent = kNone;
};

bool covers(const Label& a, const Label& b) {
  return a.weight <= b.weight && a.hops <= b.hops && a.clock <= b.clock;
}

}  // namespace

std::optional<TimedPath> timed_shortest_path(const Twig& g, const TimedQuery& q) {
  const std::size_t n = g.vertices().size();
  auto is_target = [&](VertexIndex v) {
    if (const auto* node = std::get_if<NodeId>(&q.target)) return g.node_of(v) == *node;
    return v == std::get<VertexIndex>(q.target);
  };
  auto too_late = [&](Micros clock) { return q.deadline && clock > *q.deadline; };

  std::vector<Label> labels;
  std::vector<std::vector<std::size_t>> pending(n);
  std::vector<std::vector<std::size_t>> settled(n);
  using Key = std::tuple<Micros, std::size_t, Micros, VertexIndex, std::size_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> pq;

  auto offer = [&](const Label& l) {
    if (too_late(l.clock)) return;
    for (std::size_t idx : pending[l.vertex]) {
      if (covers(labels[idx], l)) return;
    }
    const std::size_t idx = labels.size();
    labels.push_back(l);
    pending[l.vertex].push_back(idx);
    pq.emplace(l.weight, l.hops, l.clock, l.vertex, idx);
  };

  for (const auto& src : q.sources) {
    if (src.vertex >= n) continue;
    offer(Label{src.offset, 0, q.clock, src.vertex, kNone});
  }

  while (!pq.empty()) {
    const std::size_t idx = std::get<4>(pq.top());
    pq.pop();
    const Label cur = labels[idx];
    bool dominated = false;
    for (std::size_t s : settled[cur.vertex]) dominated = dominated || covers(labels[s], cur);
    if (dominated) continue;
    settled[cur.vertex].push_back(idx);

    if (is_target(cur.vertex)) {
      TimedPath out;
      out.path.total_weight = cur.weight;
      for (std::size_t at = idx; at != kNone; at = labels[at].parent) {
        out.path.vertices.push_back(labels[at].vertex);
        out.clock.push_back(labels[at].clock);
      }
      std::reverse(out.path.vertices.begin(), out.path.vertices.end());
      std::reverse(out.clock.begin(), out.clock.end());
      return out;
    }

    for (const auto& arc : g.arcs_from(cur.vertex)) {
      const TwigEdge& edge = g.edges()[arc.edge];
      Micros clock = cur.clock;
      if (edge.origin == EdgeOrigin::WithinWindow) {
        const SplitWindow& w = g.window_of(cur.vertex);
        const Micros send = std::max(cur.clock, w.start);
        if (send > w.end || send + g.t_tr() > w.original_end) continue;
        clock = send + g.t_tr();
      } else if (cur.clock > g.window_of(arc.to).end) {
        continue;
      }
      offer(Label{cur.weight + arc.weight, cur.hops + 1, clock, arc.to, idx});
    }
  }
  return std::nullopt;
}

std::vector<TimedSource> holder_sources(const Twig& g, NodeId node, Micros clock) {
  std::vector<TimedSource> out;
  std::optional<Micros> earliest;
  for (VertexIndex v : g.vertices_of(node)) {
    const SplitWindow& w = g.window_of(v);
    if (clock > w.end) continue;
    if (!earliest || w.start < *earliest) earliest = w.start;
    out.push_back({v, w.start});
  }
  for (auto& s : out) s.offset -= *earliest;
  return out;
}

}  // namespace tda
