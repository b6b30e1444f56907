#include "tda/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "tda/errors.hpp"

namespace tda {

Position position_at(const Node& node, double t) {
  const auto& wp = node.waypoints;
  if (wp.empty()) throw ScenarioError("node " + std::to_string(raw(node.id)) + ": waypoints missing");
  if (t <= wp.front().t) return {wp.front().x, wp.front().y, wp.front().z};
  if (t >= wp.back().t) return {wp.back().x, wp.back().y, wp.back().z};
  auto next = std::upper_bound(wp.begin(), wp.end(), t, [](double v, const Waypoint& w) { return v < w.t; });
  const Waypoint& p1 = *next;
  const Waypoint& p0 = *(next - 1);
  const double f = (t - p0.t) / (p1.t - p0.t);
  return {p0.x + f * (p1.x - p0.x), p0.y + f * (p1.y - p0.y), p0.z + f * (p1.z - p0.z)};
}

double min_range(const Node& a, const Node& b) {
  return std::min(a.range.value_or(0.0), b.range.value_or(0.0));
}

std::vector<TimeWindow> derive_windows(std::span<const Node> nodes, const SamplingGrid& grid,
                                       const RangeRule& range) {
  if (!(grid.dt > 0)) throw ScenarioError("dt: must be positive");
  if (!(grid.end >= grid.begin)) throw ScenarioError("horizon: end precedes begin");
  for (const auto& n : nodes) {
    if (n.waypoints.empty()) {
      throw ScenarioError("nodes[" + std::to_string(raw(n.id)) + "].waypoints: required to derive windows");
    }
  }

  const auto steps = static_cast<std::size_t>(std::floor((grid.end - grid.begin) / grid.dt + 1e-9));
  std::vector<double> samples;
  for (std::size_t k = 0; k <= steps; ++k) samples.push_back(grid.begin + static_cast<double>(k) * grid.dt);
  if (samples.back() < grid.end) samples.push_back(grid.end);

  std::vector<const Node*> order;
  for (const auto& n : nodes) order.push_back(&n);
  std::sort(order.begin(), order.end(), [](const Node* l, const Node* r) { return l->id < r->id; });

  std::vector<TimeWindow> out;
  WindowId next_wid = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const Node& a = *order[i];
      const Node& b = *order[j];
      const double limit = range(a, b);
      std::optional<double> run_start;
      double last_in = 0;
      auto close = [&] {
        if (run_start && last_in > *run_start) {
          out.push_back({next_wid++, a.id, b.id, from_seconds(*run_start), from_seconds(last_in)});
        }
        run_start.reset();
      };
      for (double t : samples) {
        const Position pa = position_at(a, t);
        const Position pb = position_at(b, t);
        const double d = std::hypot(pa.x - pb.x, pa.y - pb.y, pa.z - pb.z);
        if (d <= limit) {
          if (!run_start) run_start = t;
          last_in = t;
        } else {
          close();
        }
      }
      close();
    }
  }
  return out;
}

}  // namespace tda
