#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "tda/scenario.hpp"

namespace tda {

enum class OverheadMode { Global, Local, Hotd };

std::string mode_name(OverheadMode m);

struct OverheadModel {
  int message_bits = 1400;
  int node_id_bits = 7;
  int reception_time_bits = 13;
  int local_bits = 40;  // two relay records, fixed per hop
  int hotd_bits = 105;

  int per_hop_bits(OverheadMode m) const;
};

/// Extra overhead ratio over a set of messages with hop counts `hops`.
/// Global and HOTD attachments accumulate along the path; Local stays fixed.
/// Throws MetricsError on an empty list or a hop count below 1.
double eor(const OverheadModel& model, OverheadMode mode, std::span<const int> hops);

struct EorPoint {
  OverheadMode mode = OverheadMode::Global;
  int hops = 0;
  double value = 0;
};

std::vector<EorPoint> eor_table(const OverheadModel& model, std::span<const int> hops);

struct Score {
  double precision = 1;
  double recall = 1;
};

Score score(const std::set<NodeId>& flagged, const std::set<NodeId>& truth);
std::set<NodeId> ground_truth(const AttackConfig& attack);

/// Median wall-clock seconds per pipeline phase.
struct PhaseTimes {
  double build = 0;
  double simulate = 0;
  double detect_global = 0;
  double detect_local = 0;
};

PhaseTimes time_phases(const Scenario& s, int repeats = 10);

}  // namespace tda
