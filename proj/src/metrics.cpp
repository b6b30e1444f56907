#include "tda/metrics.hpp"

#include <algorithm>
#include <chrono>

#include "tda/detection.hpp"
#include "tda/errors.hpp"
#include "tda/simulator.hpp"

namespace tda {

std::string mode_name(OverheadMode m) {
  switch (m) {
    case OverheadMode::Global: return "global";
    case OverheadMode::Local: return "local";
    case OverheadMode::Hotd: return "hotd";
  }
  return "";
}

int OverheadModel::per_hop_bits(OverheadMode m) const {
  switch (m) {
    case OverheadMode::Global: return node_id_bits + reception_time_bits;
    case OverheadMode::Local: return local_bits;
    case OverheadMode::Hotd: return hotd_bits;
  }
  return 0;
}

double eor(const OverheadModel& model, OverheadMode mode, std::span<const int> hops) {
  if (hops.empty()) throw MetricsError("eor: no messages");
  const double a = model.per_hop_bits(mode);
  double attached = 0;
  double payload = 0;
  for (int h : hops) {
    if (h < 1) throw MetricsError("eor: hop count must be at least 1");
    attached += mode == OverheadMode::Local ? a * h : a * h * (h + 1) / 2.0;
    payload += static_cast<double>(model.message_bits) * h;
  }
  return attached / payload;
}

std::vector<EorPoint> eor_table(const OverheadModel& model, std::span<const int> hops) {
  std::vector<EorPoint> out;
  for (OverheadMode m : {OverheadMode::Global, OverheadMode::Local, OverheadMode::Hotd}) {
    for (int h : hops) {
      const int one[] = {h};
      out.push_back({m, h, eor(model, m, one)});
    }
  }
  return out;
}

Score score(const std::set<NodeId>& flagged, const std::set<NodeId>& truth) {
  std::size_t hit = 0;
  for (NodeId n : flagged) hit += truth.contains(n) ? 1 : 0;
  Score s;
  if (!flagged.empty()) s.precision = static_cast<double>(hit) / static_cast<double>(flagged.size());
  if (!truth.empty()) s.recall = static_cast<double>(hit) / static_cast<double>(truth.size());
  return s;
}

std::set<NodeId> ground_truth(const AttackConfig& attack) {
  std::set<NodeId> out;
  for (const auto& [n, d] : attack.delays) {
    if (d > 0) out.insert(n);
  }
  return out;
}

namespace {

template <typename F>
double median_seconds(int repeats, F&& f) {
  std::vector<double> samples;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    samples.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  return n % 2 == 1 ? samples[n / 2] : (samples[n / 2 - 1] + samples[n / 2]) / 2;
}

}  // namespace

PhaseTimes time_phases(const Scenario& s, int repeats) {
  repeats = std::max(repeats, 10);
  PhaseTimes t;
  Twig g = Twig::build(s.windows, s.t_tr);
  t.build = median_seconds(repeats, [&] { g = Twig::build(s.windows, s.t_tr); });
  PacketTrace trace;
  t.simulate = median_seconds(repeats, [&] { trace = simulate(s, g); });
  t.detect_global = median_seconds(repeats, [&] {
    if (trace.delivered) (void)detect_global(g, trace, s.t_tr);
  });
  t.detect_local = median_seconds(repeats, [&] { (void)run_local_pipeline(s, g, trace); });
  return t;
}

}  // namespace tda
