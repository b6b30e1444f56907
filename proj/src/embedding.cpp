#include "tda/embedding.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "tda/errors.hpp"

namespace tda {

namespace {

std::string hop_name(std::size_t i) { return "hop " + std::to_string(i); }

// Cheapest walk between two vertices of one node that only passes through
// windows still open at `clock` (the start vertex is exempt). Ties prefer
// fewer hops, then smaller predecessor index.
std::optional<TwigPath> same_node_chain(const Twig& g, VertexIndex from, VertexIndex to, Micros clock) {
  const NodeId node = g.node_of(from);
  const std::size_t n = g.vertices().size();
  std::vector<std::optional<std::pair<Micros, std::size_t>>> dist(n);
  std::vector<VertexIndex> parent(n, from);
  using Entry = std::tuple<Micros, std::size_t, VertexIndex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  dist[from] = {0, 0};
  pq.emplace(0, 0, from);
  while (!pq.empty()) {
    const auto [w, h, v] = pq.top();
    pq.pop();
    if (std::make_pair(w, h) != *dist[v]) continue;
    if (v == to) break;
    for (const auto& arc : g.arcs_from(v)) {
      if (g.node_of(arc.to) != node || g.window_of(arc.to).end < clock) continue;
      const std::pair<Micros, std::size_t> cand{w + arc.weight, h + 1};
      if (!dist[arc.to] || cand < *dist[arc.to]) {
        dist[arc.to] = cand;
        parent[arc.to] = v;
        pq.emplace(cand.first, cand.second, arc.to);
      }
    }
  }
  if (!dist[to]) return std::nullopt;
  TwigPath out;
  out.total_weight = dist[to]->first;
  for (VertexIndex v = to; v != from; v = parent[v]) out.vertices.push_back(v);
  out.vertices.push_back(from);
  std::reverse(out.vertices.begin(), out.vertices.end());
  return out;
}

// Vertices between the receive vertex r and the send vertex s of one relay.
// Prefers walking through every vertex of the node whose window is live at
// the send instant and sorts between r and s, which is how followed paths
// are written out by hand; falls back to the cheapest open chain when that
// walk is not a valid or not a minimum-weight chain.
std::vector<VertexIndex> relay_chain(const Twig& g, VertexIndex r, VertexIndex s, Micros clock, Micros send) {
  if (r == s) return {r};
  auto key = [&](VertexIndex v) {
    const SplitWindow& w = g.window_of(v);
    return std::tie(w.start, w.end, w.label);
  };
  std::vector<VertexIndex> rule{r};
  for (VertexIndex v : g.vertices_of(g.node_of(r))) {
    if (v == r || v == s || !g.window_of(v).contains(send)) continue;
    if (key(r) < key(v) && key(v) < key(s)) rule.push_back(v);
  }
  rule.push_back(s);

  auto best = same_node_chain(g, r, s, clock);
  bool rule_ok = true;
  Micros rule_weight = 0;
  for (std::size_t i = 1; i < rule.size() && rule_ok; ++i) {
    auto e = g.edge_between(rule[i - 1], rule[i]);
    if (!e) {
      rule_ok = false;
    } else {
      rule_weight += g.edges()[*e].weight;
    }
  }
  if (rule_ok && (!best || rule_weight == best->total_weight)) return rule;
  if (best) return best->vertices;
  throw EmbeddingError("no same-node chain between split windows " + g.window_of(r).name() + " and " +
                       g.window_of(s).name());
}

}  // namespace

WindowIndex transmission_window(const Twig& g, NodeId from, NodeId to, Micros send,
                                std::optional<std::string_view> recorded) {
  const auto candidates = g.windows_between(from, to);
  if (recorded) {
    for (WindowIndex w : candidates) {
      if (g.windows()[w].name() == *recorded && g.windows()[w].contains(send)) return w;
    }
  }
  std::optional<WindowIndex> best;
  for (WindowIndex w : candidates) {
    const SplitWindow& sw = g.windows()[w];
    if (!sw.contains(send)) continue;
    if (!best) {
      best = w;
      continue;
    }
    const SplitWindow& cur = g.windows()[*best];
    const bool open_w = send < sw.end;
    const bool open_cur = send < cur.end;
    if (open_w != open_cur ? open_w : sw.start > cur.start) best = w;
  }
  if (!best) {
    throw EmbeddingError("no window between the two nodes contains send time " + format_seconds(send));
  }
  return *best;
}

EmbeddedTrace embed_trace(const Twig& g, const PacketTrace& trace, Micros t_tr) {
  EmbeddedTrace out;
  const auto& hops = trace.hops;
  if (hops.empty()) throw EmbeddingError("trace has no hops");
  out.hop_position.assign(hops.size(), 0);
  out.hop_window.assign(hops.size(), 0);
  if (hops.size() == 1) return out;

  for (std::size_t i = 1; i < hops.size(); ++i) {
    if (hops[i].reception_time < hops[i - 1].reception_time) {
      throw EmbeddingError(hop_name(i) + ": reception time decreases");
    }
    const Micros send = hops[i].send_time.value_or(hops[i].reception_time - t_tr);
    try {
      out.hop_window[i] = transmission_window(g, hops[i - 1].node, hops[i].node, send,
                                              hops[i].window ? std::optional<std::string_view>(*hops[i].window)
                                                             : std::nullopt);
    } catch (const EmbeddingError& e) {
      throw EmbeddingError(hop_name(i) + ": " + e.what());
    }
  }

  auto& path = out.path.vertices;
  std::optional<VertexIndex> receive;
  for (std::size_t i = 0; i + 1 < hops.size(); ++i) {
    const WindowIndex w = out.hop_window[i + 1];
    const VertexIndex s = *g.vertex_at(hops[i].node, w);
    const VertexIndex next = *g.vertex_at(hops[i + 1].node, w);
    const Micros send = hops[i + 1].send_time.value_or(hops[i + 1].reception_time - t_tr);
    if (receive) {
      out.hop_position[i] = path.size() - 1;
      std::vector<VertexIndex> chain;
      try {
        chain = relay_chain(g, *receive, s, hops[i].reception_time, send);
      } catch (const EmbeddingError& e) {
        throw EmbeddingError(hop_name(i) + ": " + e.what());
      }
      path.insert(path.end(), chain.begin() + 1, chain.end());
    } else {
      path.push_back(s);
    }
    path.push_back(next);
    receive = next;
  }
  out.hop_position.back() = path.size() - 1;
  out.path.total_weight = path_weight(g, path);
  return out;
}

}  // namespace tda
