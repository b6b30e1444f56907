#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "tda/scenario.hpp"

namespace tda {

struct GeneratorParams {
  int n_nodes = 7;
  int n_windows = 10;
  int n_malicious = 2;
  Micros min_duration = seconds(5);
  Micros max_duration = seconds(15);
  Micros horizon = seconds(200);
  Micros t_tr = seconds(1);
  Micros delay = seconds(5);
  std::uint64_t seed = 1;
};

/// Random scenario with a planted source-to-destination backbone chain.
/// Node 0 is the source, node n_nodes-1 the destination tower. Attackers are
/// drawn from the backbone's intermediate nodes. Deterministic in `seed`.
Scenario generate(const GeneratorParams& params);

/// Presets "table2-row1" .. "table2-row5": (nodes, windows, malicious) of
/// (7,10,2) (10,20,2) (15,30,3) (20,40,4) (30,50,5); delay 5 s, t_tr 1 s.
std::optional<GeneratorParams> preset(std::string_view name, std::uint64_t seed);

}  // namespace tda
