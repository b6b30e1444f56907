#include "tda/simulator.hpp"

#include <algorithm>
#include <tuple>

namespace tda {

namespace {

// Split piece of original window `wid` that carries a send starting at t.
std::optional<WindowIndex> piece_at(const Twig& g, WindowId wid, Micros t) {
  std::optional<WindowIndex> at_start;
  for (WindowIndex w = 0; w < g.windows().size(); ++w) {
    const SplitWindow& sw = g.windows()[w];
    if (sw.original != wid) continue;
    if (sw.start < t && t <= sw.end) return w;
    if (sw.start == t) at_start = w;
  }
  return at_start;
}

struct Transmission {
  NodeId to{};
  WindowIndex window = 0;
  Micros send = 0;
};

}  // namespace

std::optional<NextHop> benign_next_hop(const Scenario& s, const Twig& g, NodeId holder, Micros now,
                                       std::optional<VertexIndex> receive_vertex) {
  if (holder == s.destination) return std::nullopt;
  TimedQuery q;
  q.sources = receive_vertex ? std::vector<TimedSource>{{*receive_vertex, 0}} : holder_sources(g, holder, now);
  q.clock = now;
  q.target = s.destination;
  auto plan = timed_shortest_path(g, q);
  if (!plan) return std::nullopt;
  const auto& v = plan->path.vertices;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    if (g.node_of(v[k]) == g.node_of(v[k + 1])) continue;
    const WindowIndex w = g.vertices()[v[k]].window;
    return NextHop{g.node_of(v[k + 1]), w, std::max(plan->clock[k], g.windows()[w].start)};
  }
  return std::nullopt;
}

Simulation simulate_detailed(const Scenario& s, const Twig& g) {
  Simulation out;
  PacketTrace& trace = out.trace;
  trace.source = s.source;
  trace.destination = s.destination;
  trace.hops.push_back({s.source, s.creation_time, std::nullopt, std::nullopt});

  NodeId holder = s.source;
  Micros now = s.creation_time;
  std::optional<VertexIndex> receive;
  const std::size_t max_hops = 4 * s.windows.size() + 8;

  while (holder != s.destination && trace.hops.size() <= max_hops) {
    auto next = benign_next_hop(s, g, holder, now, receive);
    if (!next) break;

    const Micros eps = s.attack.delay_of(holder);
    std::optional<Transmission> tx;
    if (eps == 0) {
      tx = Transmission{next->neighbor, next->window, next->send_time};
    } else {
      const SplitWindow& planned = g.windows()[next->window];
      DelayEvent ev{holder, eps, planned.name(), next->send_time, std::nullopt, std::nullopt, false};
      const Micros p = next->send_time + eps;
      if (p + s.t_tr <= planned.original_end) {
        const WindowIndex w = p <= planned.end ? next->window : *piece_at(g, planned.original, p);
        tx = Transmission{next->neighbor, w, p};
      } else {
        // Missed: take the next encounter of this node with anyone.
        ev.missed = true;
        const auto original = std::find_if(s.windows.begin(), s.windows.end(),
                                           [&](const TimeWindow& w) { return w.wid == planned.original; });
        std::vector<const TimeWindow*> later;
        for (const auto& w : s.windows) {
          if (w.involves(holder) && w.wid != original->wid && w.start >= original->start) later.push_back(&w);
        }
        std::sort(later.begin(), later.end(), [](const TimeWindow* l, const TimeWindow* r) {
          return std::tie(l->start, l->wid) < std::tie(r->start, r->wid);
        });
        for (const TimeWindow* w : later) {
          const Micros send = std::max(now, w->start) + eps;
          if (send + s.t_tr > w->end) continue;
          tx = Transmission{w->other(holder), *piece_at(g, w->wid, send), send};
          break;
        }
      }
      if (tx) {
        ev.actual_window = g.windows()[tx->window].name();
        ev.actual_send = tx->send;
      }
      out.delays.push_back(ev);
    }
    if (!tx) break;

    const Micros rt = tx->send + s.t_tr;
    trace.hops.push_back({tx->to, rt, g.windows()[tx->window].name(), tx->send});
    receive = g.vertex_at(tx->to, tx->window);
    holder = tx->to;
    now = rt;
  }

  trace.delivered = holder == s.destination;
  if (trace.delivered) trace.physical_arrival = trace.hops.back().reception_time;
  return out;
}

PacketTrace simulate(const Scenario& s, const Twig& g) { return simulate_detailed(s, g).trace; }

}  // namespace tda
