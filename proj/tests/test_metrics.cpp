#include <doctest.h>

#include "support.hpp"
#include "tda/errors.hpp"
#include "tda/metrics.hpp"

using namespace tda;
using namespace tda::testing;

TEST_CASE("overhead ratios for the reference hop counts") {
  const OverheadModel m;
  const int h4[] = {4};
  const int h15[] = {15};
  CHECK(eor(m, OverheadMode::Global, h4) == doctest::Approx(0.035714).epsilon(1e-5));
  CHECK(eor(m, OverheadMode::Global, h15) == doctest::Approx(0.114286).epsilon(1e-5));
  CHECK(eor(m, OverheadMode::Local, h4) == doctest::Approx(40.0 / 1400));
  CHECK(eor(m, OverheadMode::Local, h15) == doctest::Approx(40.0 / 1400));
  CHECK(eor(m, OverheadMode::Hotd, h4) == doctest::Approx(0.1875));
  CHECK(eor(m, OverheadMode::Hotd, h15) == doctest::Approx(0.6));
  CHECK(m.per_hop_bits(OverheadMode::Global) == 20);
}

TEST_CASE("overhead ordering and growth") {
  const OverheadModel m;
  double prev_global = 0;
  for (int h = 1; h <= 40; ++h) {
    const int one[] = {h};
    const double g = eor(m, OverheadMode::Global, one);
    const double l = eor(m, OverheadMode::Local, one);
    const double x = eor(m, OverheadMode::Hotd, one);
    CHECK(g > prev_global);
    CHECK(x == doctest::Approx(g * 5.25));
    if (h >= 4) CHECK(l <= g);
    CHECK(l < x);
    prev_global = g;
  }
  const int mixed[] = {4, 15};
  const int h4[] = {4};
  const int h15[] = {15};
  const double lo = eor(m, OverheadMode::Global, h4);
  const double hi = eor(m, OverheadMode::Global, h15);
  const double mid = eor(m, OverheadMode::Global, mixed);
  CHECK(mid > lo);
  CHECK(mid < hi);
}

TEST_CASE("overhead input errors") {
  const OverheadModel m;
  CHECK_THROWS_AS(eor(m, OverheadMode::Global, std::span<const int>{}), MetricsError);
  const int zero[] = {0};
  CHECK_THROWS_AS(eor(m, OverheadMode::Local, zero), MetricsError);
}

TEST_CASE("eor table order") {
  const int hops[] = {4, 5};
  const auto t = eor_table(OverheadModel{}, hops);
  REQUIRE(t.size() == 6);
  CHECK(t[0].mode == OverheadMode::Global);
  CHECK(t[0].hops == 4);
  CHECK(t[1].hops == 5);
  CHECK(t[2].mode == OverheadMode::Local);
  CHECK(t[5].mode == OverheadMode::Hotd);
  CHECK(mode_name(OverheadMode::Hotd) == "hotd");
}

TEST_CASE("precision and recall") {
  const NodeId a{1}, b{2}, c{3};
  auto s = score({a, b}, {a, c});
  CHECK(s.precision == doctest::Approx(0.5));
  CHECK(s.recall == doctest::Approx(0.5));
  s = score({}, {a});
  CHECK(s.precision == 1);
  CHECK(s.recall == 0);
  s = score({a}, {});
  CHECK(s.precision == 0);
  CHECK(s.recall == 1);
  s = score({}, {});
  CHECK(s.precision == 1);
  CHECK(s.recall == 1);

  AttackConfig cfg;
  cfg.delays[a] = seconds(5);
  cfg.delays[b] = 0;
  CHECK(ground_truth(cfg) == std::set<NodeId>{a});
}

TEST_CASE("phase timings are non-negative") {
  const auto t = time_phases(fixture("seven_node_attack_ac"), 3);
  CHECK(t.build >= 0);
  CHECK(t.simulate >= 0);
  CHECK(t.detect_global >= 0);
  CHECK(t.detect_local >= 0);
  CHECK(t.detect_global < 1.0);
}
