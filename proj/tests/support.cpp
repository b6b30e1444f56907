#include "support.hpp"

#include <algorithm>
#include <functional>

#include "tda/embedding.hpp"
#include "tda/scenario_io.hpp"

namespace tda::testing {

Scenario fixture(const std::string& name) { return load_scenario(std::string(TDA_SCENARIO_DIR) + "/" + name + ".json"); }

NodeId id(const Scenario& s, const std::string& name) { return s.resolve(name).value(); }

VertexIndex vertex(const Scenario& s, const Twig& g, const std::string& node, const std::string& window) {
  return g.find_vertex(id(s, node), window).value();
}

std::vector<std::string> labels(const Scenario& s, const Twig& g, const std::vector<VertexIndex>& path) {
  std::vector<std::string> out;
  for (VertexIndex v : path) out.push_back(s.label(g.node_of(v)) + g.window_of(v).name());
  return out;
}

std::set<std::string> names(const Scenario& s, const std::set<NodeId>& nodes) {
  std::set<std::string> out;
  for (NodeId n : nodes) out.insert(s.label(n));
  return out;
}

std::optional<TwigPath> brute_force_shortest(const Twig& g, VertexIndex from, NodeId to_node) {
  const std::size_t n = g.vertices().size();
  // Plain adjacency rebuilt from the edge list so the oracle does not share
  // the arc tables used by the search under test.
  std::vector<std::vector<std::pair<VertexIndex, Micros>>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.u].push_back({e.v, e.weight});
    if (e.kind == EdgeKind::Undirected) adj[e.v].push_back({e.u, e.weight});
  }
  std::optional<TwigPath> best;
  std::vector<VertexIndex> path{from};
  std::vector<bool> used(n, false);
  used[from] = true;
  auto better = [](const TwigPath& a, const TwigPath& b) {
    if (a.total_weight != b.total_weight) return a.total_weight < b.total_weight;
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
  };
  std::function<void(Micros)> walk = [&](Micros w) {
    const VertexIndex v = path.back();
    if (g.node_of(v) == to_node) {
      TwigPath cand{path, w};
      if (!best || better(cand, *best)) best = cand;
      return;
    }
    for (const auto& [u, weight] : adj[v]) {
      if (used[u]) continue;
      used[u] = true;
      path.push_back(u);
      walk(w + weight);
      path.pop_back();
      used[u] = false;
    }
  };
  walk(0);
  return best;
}

std::vector<TimeWindow> small_windows(std::mt19937_64& rng, std::size_t max_vertices) {
  for (;;) {
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_int_distribution<std::uint32_t> node(0, 3);
    std::uniform_int_distribution<int> start(0, 30);
    std::uniform_int_distribution<int> length(1, 12);
    std::vector<TimeWindow> ws;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
      const std::uint32_t a = node(rng);
      std::uint32_t b = node(rng);
      while (b == a) b = node(rng);
      const Micros s0 = seconds(start(rng));
      ws.push_back({i + 1, NodeId{a}, NodeId{b}, s0, s0 + seconds(length(rng))});
    }
    if (split_windows(ws).size() * 2 <= max_vertices) return ws;
  }
}

std::set<NodeId> engaged(const Simulation& sim) {
  std::set<NodeId> out;
  for (const auto& d : sim.delays) {
    if (d.actual_send) out.insert(d.node);
  }
  return out;
}

std::set<NodeId> weight_altering(const Scenario& s, const Twig& g, const Simulation& sim) {
  std::set<NodeId> out;
  if (!sim.trace.delivered) return out;
  const Micros actual = embed_trace(g, sim.trace, s.t_tr).path.total_weight;
  for (NodeId n : engaged(sim)) {
    Scenario without = s;
    without.attack.delays.erase(n);
    const PacketTrace t = simulate(without, g);
    if (!t.delivered || embed_trace(g, t, s.t_tr).path.total_weight != actual) out.insert(n);
  }
  return out;
}

}  // namespace tda::testing
