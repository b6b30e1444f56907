#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tda/scenario.hpp"
#include "tda/simulator.hpp"
#include "tda/twig.hpp"

namespace tda::testing {

Scenario fixture(const std::string& name);  // "seven_node", "seven_node_attack_a", "seven_node_attack_ac"
NodeId id(const Scenario& s, const std::string& name);
VertexIndex vertex(const Scenario& s, const Twig& g, const std::string& node, const std::string& window);
std::vector<std::string> labels(const Scenario& s, const Twig& g, const std::vector<VertexIndex>& path);
std::set<std::string> names(const Scenario& s, const std::set<NodeId>& nodes);

/// Every simple path from `from` to a vertex of `to_node`, keeping the one
/// with the smallest (weight, hops, vertex sequence).
std::optional<TwigPath> brute_force_shortest(const Twig& g, VertexIndex from, NodeId to_node);

/// Random window set over a few nodes whose graph has at most `max_vertices`.
std::vector<TimeWindow> small_windows(std::mt19937_64& rng, std::size_t max_vertices);

/// Attackers that transmitted the message.
std::set<NodeId> engaged(const Simulation& sim);

/// Engaged attackers whose delay changed the followed path's weight or the
/// delivery outcome, found by replaying without that attacker.
std::set<NodeId> weight_altering(const Scenario& s, const Twig& g, const Simulation& sim);

}  // namespace tda::testing
