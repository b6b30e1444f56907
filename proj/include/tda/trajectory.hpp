#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tda/scenario.hpp"

namespace tda {

struct Position {
  double x = 0, y = 0, z = 0;
};

/// Linear interpolation between waypoints; clamps outside the waypoint span.
Position position_at(const Node& node, double t);

/// Maximum link distance in meters for a node pair.
using RangeRule = std::function<double(const Node&, const Node&)>;

/// min(range_a, range_b); a missing range counts as zero.
double min_range(const Node& a, const Node& b);

struct SamplingGrid {
  double begin = 0;  // seconds
  double end = 0;
  double dt = 1;
};

/// Encounter windows from trajectories: for each unordered pair, the maximal
/// runs of grid samples at which the pair is within range. Window ids are
/// assigned from 1 in (pair, start) order. Throws ScenarioError when a node
/// has no waypoints or the grid is malformed.
std::vector<TimeWindow> derive_windows(std::span<const Node> nodes, const SamplingGrid& grid,
                                       const RangeRule& range = min_range);

}  // namespace tda
