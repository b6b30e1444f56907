#include "tda/time.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace tda {

Micros from_seconds(double s) {
  return static_cast<Micros>(std::llround(s * static_cast<double>(kMicrosPerSecond)));
}

double to_seconds(Micros t) {
  return static_cast<double>(t) / static_cast<double>(kMicrosPerSecond);
}

std::string format_seconds(Micros t) {
  const bool negative = t < 0;
  const auto mag = static_cast<unsigned long long>(negative ? -t : t);
  const auto whole = mag / kMicrosPerSecond;
  auto frac = mag % kMicrosPerSecond;
  std::string out = negative ? "-" : "";
  out += std::to_string(whole);
  if (frac != 0) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%06llu", frac);
    std::string digits(buf);
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    out += "." + digits;
  }
  return out;
}

}  // namespace tda
