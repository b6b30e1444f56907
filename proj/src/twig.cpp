#include "tda/twig.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace tda {

std::string SplitWindow::name() const {
  std::string out;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i > 0) out += '.';
    out += std::to_string(label[i]);
  }
  return out;
}

std::vector<SplitWindow> split_windows(std::span<const TimeWindow> windows) {
  std::vector<SplitWindow> current;
  current.reserve(windows.size());
  for (const auto& w : windows) {
    current.push_back({{static_cast<int>(w.wid)}, w.wid, w.a, w.b, w.start, w.end, w.end});
  }

  auto child = [](const SplitWindow& parent, int k, Micros start, Micros end) {
    SplitWindow c = parent;
    c.label.push_back(k);
    c.start = start;
    c.end = end;
    return c;
  };

  // Rescan from the beginning after every split. Cut points always come from
  // the original boundaries, so the number of distinct pieces is finite.
  for (bool split = true; split;) {
    split = false;
    const std::size_t n = current.size();
    for (std::size_t i = 0; i < n && !split; ++i) {
      for (std::size_t j = 0; j < n && !split; ++j) {
        const SplitWindow& wi = current[i];
        const SplitWindow& wj = current[j];
        if (i == j || !(wi.start < wj.start && wj.start < wi.end && wi.end < wj.end)) continue;
        const SplitWindow i1 = child(wi, 1, wi.start, wj.start);
        const SplitWindow i2 = child(wi, 2, wj.start, wi.end);
        const SplitWindow j1 = child(wj, 1, wj.start, wi.end);
        const SplitWindow j2 = child(wj, 2, wi.end, wj.end);
        std::vector<SplitWindow> next;
        next.reserve(n + 2);
        for (std::size_t k = 0; k < n; ++k) {
          if (k == i) {
            next.push_back(i1);
            next.push_back(i2);
          } else if (k == j) {
            next.push_back(j1);
            next.push_back(j2);
          } else {
            next.push_back(current[k]);
          }
        }
        current = std::move(next);
        split = true;
      }
    }
  }
  return current;
}

Twig Twig::build(std::span<const TimeWindow> windows, Micros t_tr) {
  Twig g;
  g.t_tr_ = t_tr;
  g.windows_ = split_windows(windows);
  std::sort(g.windows_.begin(), g.windows_.end(),
            [](const SplitWindow& l, const SplitWindow& r) { return l.label < r.label; });

  for (WindowIndex w = 0; w < g.windows_.size(); ++w) {
    g.vertices_.push_back({g.windows_[w].a, w});
    g.vertices_.push_back({g.windows_[w].b, w});
  }
  std::sort(g.vertices_.begin(), g.vertices_.end(), [&](const TwigVertex& l, const TwigVertex& r) {
    return std::tie(l.node, g.windows_[l.window].label) < std::tie(r.node, g.windows_[r.window].label);
  });

  g.window_vertices_.assign(g.windows_.size(), {0, 0});
  std::vector<int> filled(g.windows_.size(), 0);
  for (VertexIndex v = 0; v < g.vertices_.size(); ++v) {
    const WindowIndex w = g.vertices_[v].window;
    g.window_vertices_[w][filled[w]++] = v;
    g.by_node_[g.vertices_[v].node].push_back(v);
  }

  for (WindowIndex w = 0; w < g.windows_.size(); ++w) {
    const auto [u, v] = g.window_vertices_[w];
    g.edges_.push_back({u, v, EdgeKind::Undirected, t_tr, EdgeOrigin::WithinWindow});
  }

  for (auto& [node, list] : g.by_node_) {
    for (VertexIndex p : list) {
      for (VertexIndex q : list) {
        if (p == q) continue;
        const SplitWindow& wp = g.windows_[g.vertices_[p].window];
        const SplitWindow& wq = g.windows_[g.vertices_[q].window];
        if (wp.end <= wq.start) {
          g.edges_.push_back({p, q, EdgeKind::Directed, wq.start - wp.start, EdgeOrigin::Succession});
        }
        if (wp.start <= wq.start && wq.end <= wp.end) {
          const bool identical = wp.start == wq.start && wp.end == wq.end;
          if (!identical || p < q) {
            g.edges_.push_back({p, q, EdgeKind::Undirected, wq.start - wp.start, EdgeOrigin::Containment});
          }
        }
      }
    }
    std::sort(list.begin(), list.end(), [&](VertexIndex l, VertexIndex r) {
      const SplitWindow& wl = g.windows_[g.vertices_[l].window];
      const SplitWindow& wr = g.windows_[g.vertices_[r].window];
      return std::tie(wl.start, wl.end, wl.label) < std::tie(wr.start, wr.end, wr.label);
    });
  }

  std::sort(g.edges_.begin(), g.edges_.end(), [](const TwigEdge& l, const TwigEdge& r) {
    return std::tie(l.u, l.v, l.origin) < std::tie(r.u, r.v, r.origin);
  });

  g.out_.assign(g.vertices_.size(), {});
  g.in_.assign(g.vertices_.size(), {});
  for (std::size_t e = 0; e < g.edges_.size(); ++e) {
    const TwigEdge& edge = g.edges_[e];
    g.out_[edge.u].push_back({edge.v, edge.weight, e});
    g.in_[edge.v].push_back({edge.u, edge.weight, e});
    if (edge.kind == EdgeKind::Undirected) {
      g.out_[edge.v].push_back({edge.u, edge.weight, e});
      g.in_[edge.u].push_back({edge.v, edge.weight, e});
    }
  }
  auto by_target = [](const Arc& l, const Arc& r) { return std::tie(l.to, l.weight, l.edge) < std::tie(r.to, r.weight, r.edge); };
  for (auto& arcs : g.out_) std::sort(arcs.begin(), arcs.end(), by_target);
  for (auto& arcs : g.in_) std::sort(arcs.begin(), arcs.end(), by_target);
  return g;
}

std::optional<WindowIndex> Twig::find_window(std::string_view name) const {
  for (WindowIndex w = 0; w < windows_.size(); ++w) {
    if (windows_[w].name() == name) return w;
  }
  return std::nullopt;
}

std::optional<VertexIndex> Twig::vertex_at(NodeId node, WindowIndex window) const {
  if (window >= windows_.size()) return std::nullopt;
  for (VertexIndex v : window_vertices_[window]) {
    if (vertices_[v].node == node) return v;
  }
  return std::nullopt;
}

std::optional<VertexIndex> Twig::find_vertex(NodeId node, std::string_view window_name) const {
  auto w = find_window(window_name);
  if (!w) return std::nullopt;
  return vertex_at(node, *w);
}

std::span<const VertexIndex> Twig::vertices_of(NodeId node) const {
  auto it = by_node_.find(node);
  if (it == by_node_.end()) return {};
  return it->second;
}

std::vector<WindowIndex> Twig::windows_between(NodeId a, NodeId b) const {
  std::vector<WindowIndex> out;
  for (VertexIndex v : vertices_of(a)) {
    const WindowIndex w = vertices_[v].window;
    if (windows_[w].other(a) == b) out.push_back(w);
  }
  return out;  // vertices_of is already in (start, end, label) order
}

std::map<std::string, WindowId> Twig::provenance() const {
  std::map<std::string, WindowId> out;
  for (const auto& w : windows_) out[w.name()] = w.original;
  return out;
}

std::optional<std::size_t> Twig::edge_between(VertexIndex u, VertexIndex v) const {
  for (const Arc& arc : out_[u]) {
    if (arc.to == v) return arc.edge;
  }
  return std::nullopt;
}

Micros path_weight(const Twig& g, std::span<const VertexIndex> vertices) {
  Micros total = 0;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    auto e = g.edge_between(vertices[i - 1], vertices[i]);
    if (!e) throw std::invalid_argument("path_weight: vertices " + std::to_string(vertices[i - 1]) + " and " +
                                        std::to_string(vertices[i]) + " are not adjacent");
    total += g.edges()[*e].weight;
  }
  return total;
}

namespace {

struct Cost {
  Micros weight = 0;
  std::size_t hops = 0;
  auto operator<=>(const Cost&) const = default;
};

// Distances from every vertex to the target set over reversed arcs, then a
// greedy walk that always takes the smallest-index vertex on some optimal
// continuation. Hop counts strictly decrease along the walk, so it ends.
std::optional<TwigPath> lexicographic_shortest(const Twig& g, VertexIndex from,
                                               const std::vector<VertexIndex>& targets) {
  const std::size_t n = g.vertices().size();
  if (from >= n) throw std::out_of_range("shortest_path: unknown source vertex");
  std::vector<std::optional<Cost>> dist(n);
  using Entry = std::tuple<Micros, std::size_t, VertexIndex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  for (VertexIndex t : targets) {
    dist[t] = Cost{0, 0};
    pq.emplace(0, 0, t);
  }
  while (!pq.empty()) {
    const auto [w, h, v] = pq.top();
    pq.pop();
    if (Cost{w, h} != *dist[v]) continue;
    for (const auto& arc : g.arcs_into(v)) {
      const Cost cand{w + arc.weight, h + 1};
      if (!dist[arc.to] || cand < *dist[arc.to]) {
        dist[arc.to] = cand;
        pq.emplace(cand.weight, cand.hops, arc.to);
      }
    }
  }
  if (!dist[from]) return std::nullopt;

  TwigPath path{{from}, dist[from]->weight};
  VertexIndex cur = from;
  while (dist[cur]->hops > 0) {
    const Cost here = *dist[cur];
    for (const auto& arc : g.arcs_from(cur)) {
      const auto& next = dist[arc.to];
      if (next && next->hops + 1 == here.hops && next->weight + arc.weight == here.weight) {
        cur = arc.to;
        break;
      }
    }
    path.vertices.push_back(cur);
  }
  return path;
}

}  // namespace

std::optional<TwigPath> shortest_path(const Twig& g, VertexIndex from, NodeId to_node) {
  auto span = g.vertices_of(to_node);
  std::vector<VertexIndex> targets(span.begin(), span.end());
  if (targets.empty()) return std::nullopt;
  return lexicographic_shortest(g, from, targets);
}

std::optional<TwigPath> shortest_path_to_vertex(const Twig& g, VertexIndex from, VertexIndex to) {
  return lexicographic_shortest(g, from, {to});
}

}  // namespace tda
