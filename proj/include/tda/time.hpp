#pragma once

#include <cstdint>
#include <string>

namespace tda {

/// Simulation clock. Integer microseconds keep weight sums and the
/// timing equalities used by the detectors exact.
using Micros = std::int64_t;

inline constexpr Micros kMicrosPerSecond = 1'000'000;

constexpr Micros seconds(std::int64_t s) { return s * kMicrosPerSecond; }

/// Rounds decimal seconds to the nearest microsecond.
Micros from_seconds(double s);
double to_seconds(Micros t);

/// Shortest decimal rendering in seconds ("31", "0.5", "12.000001").
std::string format_seconds(Micros t);

}  // namespace tda
