#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tda/detection.hpp"
#include "tda/metrics.hpp"
#include "tda/scenario.hpp"
#include "tda/simulator.hpp"
#include "tda/twig.hpp"

namespace tda {

using nlohmann::ordered_json;

/// "B^3.1"
std::string vertex_label(const Scenario& s, const Twig& g, VertexIndex v);

ordered_json twig_to_json(const Scenario& s, const Twig& g);
std::string twig_to_dot(const Scenario& s, const Twig& g);

ordered_json trace_to_json(const Scenario& s, const Simulation& sim);
/// Throws ScenarioError naming the offending field.
PacketTrace trace_from_json(const Scenario& s, const ordered_json& doc);

ordered_json global_report_to_json(const Scenario& s, const Twig& g, const DetectionReport& r);
ordered_json local_run_to_json(const Scenario& s, const LocalRun& run);

ordered_json eor_to_json(std::span<const EorPoint> points);
std::string eor_to_csv(std::span<const EorPoint> points);

ordered_json score_to_json(const Score& s);
ordered_json times_to_json(const PhaseTimes& t);

}  // namespace tda
