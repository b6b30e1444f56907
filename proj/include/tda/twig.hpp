#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tda/scenario.hpp"

namespace tda {

using VertexIndex = std::size_t;
using WindowIndex = std::size_t;

/// A window after overlap splitting. `label` is the split lineage: {3} for an
/// untouched original window 3, {3, 1} and {3, 2} for its two halves, etc.
struct SplitWindow {
  std::vector<int> label;
  WindowId original = 0;
  NodeId a{};
  NodeId b{};
  Micros start = 0;
  Micros end = 0;
  Micros original_end = 0;  // end of the physical encounter this piece belongs to

  std::string name() const;  // "3", "3.1", "3.1.2"
  bool involves(NodeId n) const { return a == n || b == n; }
  NodeId other(NodeId n) const { return n == a ? b : a; }
  bool contains(Micros t) const { return start <= t && t <= end; }
};

struct TwigVertex {
  NodeId node{};
  WindowIndex window = 0;
};

enum class EdgeKind { Undirected, Directed };
enum class EdgeOrigin { WithinWindow, Succession, Containment };

struct TwigEdge {
  VertexIndex u = 0;
  VertexIndex v = 0;
  EdgeKind kind = EdgeKind::Undirected;
  Micros weight = 0;
  EdgeOrigin origin = EdgeOrigin::WithinWindow;
};

struct TwigPath {
  std::vector<VertexIndex> vertices;
  Micros total_weight = 0;

  std::size_t hops() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  bool operator==(const TwigPath&) const = default;
};

/// Time-Window Graph: one vertex per (node, split window) endpoint,
/// within-window edges of weight t_tr and same-node succession/containment
/// edges weighted by the difference of window starts.
///
/// Vertices are indexed in (node, label) order, so comparing vertex indices
/// compares vertices lexicographically by (node, wid).
class Twig {
 public:
  struct Arc {
    VertexIndex to = 0;
    Micros weight = 0;
    std::size_t edge = 0;
  };

  static Twig build(std::span<const TimeWindow> windows, Micros t_tr);

  Micros t_tr() const { return t_tr_; }
  const std::vector<SplitWindow>& windows() const { return windows_; }
  const std::vector<TwigVertex>& vertices() const { return vertices_; }
  const std::vector<TwigEdge>& edges() const { return edges_; }
  std::span<const Arc> arcs_from(VertexIndex v) const { return out_[v]; }
  std::span<const Arc> arcs_into(VertexIndex v) const { return in_[v]; }

  const SplitWindow& window_of(VertexIndex v) const { return windows_[vertices_[v].window]; }
  NodeId node_of(VertexIndex v) const { return vertices_[v].node; }

  std::optional<WindowIndex> find_window(std::string_view name) const;
  std::optional<VertexIndex> vertex_at(NodeId node, WindowIndex window) const;
  /// Vertex by node and split-window name, e.g. (B, "3.1").
  std::optional<VertexIndex> find_vertex(NodeId node, std::string_view window_name) const;
  /// All vertices of a node ordered by (start, end, label).
  std::span<const VertexIndex> vertices_of(NodeId node) const;
  /// Split windows between two nodes ordered by (start, end, label).
  std::vector<WindowIndex> windows_between(NodeId a, NodeId b) const;
  /// Split-window label -> original window id.
  std::map<std::string, WindowId> provenance() const;

  /// Edge traversable from u to v, if any.
  std::optional<std::size_t> edge_between(VertexIndex u, VertexIndex v) const;

 private:
  Micros t_tr_ = 0;
  std::vector<SplitWindow> windows_;
  std::vector<TwigVertex> vertices_;
  std::vector<TwigEdge> edges_;
  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Arc>> in_;
  std::map<NodeId, std::vector<VertexIndex>> by_node_;
  std::vector<std::array<VertexIndex, 2>> window_vertices_;
};

/// Overlap splitting on its own: repeatedly replaces any pair with
/// start_i < start_j < end_i < end_j by [start_i,start_j],[start_j,end_i] and
/// [start_j,end_i],[end_i,end_j] until no such pair remains.
std::vector<SplitWindow> split_windows(std::span<const TimeWindow> windows);

/// Minimum-weight path from `from` to any vertex of `to_node`; undirected
/// edges are traversable both ways. Ties prefer fewer hops, then the
/// lexicographically smallest vertex sequence. A vertex already on `to_node`
/// yields the zero-edge path. nullopt when unreachable.
std::optional<TwigPath> shortest_path(const Twig& g, VertexIndex from, NodeId to_node);
/// Same, to one specific vertex.
std::optional<TwigPath> shortest_path_to_vertex(const Twig& g, VertexIndex from, VertexIndex to);

/// Sum of traversed edge weights; throws std::invalid_argument if two
/// consecutive vertices are not joined by a traversable edge.
Micros path_weight(const Twig& g, std::span<const VertexIndex> vertices);

// --- time-aware search -----------------------------------------------------
//
// The plain graph ignores the physical clock: a containment edge can lead
// into a window that has already closed. Routing decisions and detector
// checks therefore search over (vertex, clock) states. Moving between
// vertices of one node keeps the clock and requires the target window to be
// still open; crossing a within-window edge sends at max(clock, start),
// which must lie in the piece and leave t_tr before the encounter ends.

struct TimedSource {
  VertexIndex vertex = 0;
  Micros offset = 0;  // initial path weight
};

struct TimedQuery {
  std::vector<TimedSource> sources;
  Micros clock = 0;
  std::variant<NodeId, VertexIndex> target;
  std::optional<Micros> deadline;  // latest clock allowed on reaching the target
};

struct TimedPath {
  TwigPath path;             // total_weight includes the source offset
  std::vector<Micros> clock;  // holder clock at each vertex
};

/// Minimum-weight feasible path; ties prefer fewer hops, then earlier clock.
std::optional<TimedPath> timed_shortest_path(const Twig& g, const TimedQuery& q);

/// Sources for a holder that is not attached to a particular vertex (the
/// source at creation time): every vertex of `node` still open at `clock`,
/// offset by its start relative to the earliest of them.
std::vector<TimedSource> holder_sources(const Twig& g, NodeId node, Micros clock);

}  // namespace tda
