#include "tda/generator.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <string>

#include "tda/errors.hpp"

namespace tda {

namespace {

constexpr Micros kGrain = 1000;  // generated times are whole milliseconds
constexpr int kPlacementAttempts = 1000;

// Bounded draws built directly on mt19937_64 output so files are identical
// across standard library implementations.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) {  // uniform in [0, n)
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % n;
  }

  std::int64_t between(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  Micros time_between(Micros lo, Micros hi) { return between(lo / kGrain, hi / kGrain) * kGrain; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

void check(const GeneratorParams& p) {
  auto fail = [](const std::string& m) { throw GenerationError(m); };
  if (p.n_nodes < 2) fail("n_nodes: need at least a source and a destination");
  if (p.n_windows < 1) fail("n_windows: need at least one window");
  if (p.n_malicious < 0 || p.n_malicious >= p.n_nodes - 1) fail("n_malicious: must be in [0, n_nodes - 1)");
  if (p.n_malicious > p.n_windows - 1) fail("n_malicious: backbone needs n_malicious + 1 windows");
  if (p.t_tr <= 0) fail("t_tr: must be positive");
  if (p.min_duration < p.t_tr) fail("window_duration_range: minimum below t_tr");
  if (p.max_duration < p.min_duration) fail("window_duration_range: maximum below minimum");
  if (p.delay < 0) fail("delay: must be non-negative");
  if (p.horizon < p.max_duration) fail("horizon: shorter than the longest window");
}

}  // namespace

Scenario generate(const GeneratorParams& p) {
  check(p);
  Draw draw(p.seed);

  const int n = p.n_nodes;
  Scenario s;
  s.t_tr = p.t_tr;
  s.source = NodeId{0};
  s.destination = NodeId{static_cast<std::uint32_t>(n - 1)};
  for (int i = 0; i < n; ++i) s.nodes.push_back(Node{.id = NodeId{static_cast<std::uint32_t>(i)}});

  // Backbone length: room for every attacker, bounded by the window budget
  // and by how many minimum-length windows fit in the horizon.
  const int max_by_horizon = static_cast<int>(p.horizon / p.min_duration) - 1;
  const int lo = p.n_malicious;
  const int hi = std::min({n - 2, p.n_windows - 1, max_by_horizon});
  if (hi < lo) throw GenerationError("horizon: too short for a backbone with " + std::to_string(lo) + " relays");
  const int relays = static_cast<int>(draw.between(lo, hi));

  std::vector<NodeId> pool;
  for (int i = 1; i < n - 1; ++i) pool.push_back(NodeId{static_cast<std::uint32_t>(i)});
  draw.shuffle(pool);
  std::vector<NodeId> chain{s.source};
  chain.insert(chain.end(), pool.begin(), pool.begin() + relays);
  chain.push_back(s.destination);

  std::vector<Micros> durations;
  Micros total = 0;
  for (int i = 0; i <= relays; ++i) {
    durations.push_back(draw.time_between(p.min_duration, p.max_duration));
    total += durations.back();
  }
  // Shrink to the minimum if the random draw overflows the horizon.
  if (total > p.horizon) {
    for (auto& d : durations) d = p.min_duration;
    total = p.min_duration * static_cast<Micros>(durations.size());
  }
  const Micros slack = p.horizon - total;
  const Micros max_gap = slack / static_cast<Micros>(relays + 2);

  std::vector<TimeWindow> windows;
  Micros cursor = 0;
  for (int i = 0; i <= relays; ++i) {
    cursor += draw.time_between(0, max_gap);
    windows.push_back({0, chain[i], chain[i + 1], cursor, cursor + durations[i]});
    cursor += durations[i];
  }

  auto clashes = [&](const TimeWindow& w) {
    return std::any_of(windows.begin(), windows.end(), [&](const TimeWindow& o) {
      const bool same_pair = (o.a == w.a && o.b == w.b) || (o.a == w.b && o.b == w.a);
      return same_pair && o.start <= w.end && w.start <= o.end;
    });
  };
  for (int extra = relays + 1; extra < p.n_windows; ++extra) {
    bool placed = false;
    for (int attempt = 0; attempt < kPlacementAttempts && !placed; ++attempt) {
      const auto a = static_cast<std::uint32_t>(draw.below(static_cast<std::uint64_t>(n)));
      auto b = static_cast<std::uint32_t>(draw.below(static_cast<std::uint64_t>(n - 1)));
      if (b >= a) ++b;
      const Micros d = draw.time_between(p.min_duration, p.max_duration);
      const Micros start = draw.time_between(0, p.horizon - d);
      TimeWindow w{0, NodeId{a}, NodeId{b}, start, start + d};
      if (!clashes(w)) {
        windows.push_back(w);
        placed = true;
      }
    }
    if (!placed) throw GenerationError("n_windows: cannot place window " + std::to_string(extra + 1) + " within the horizon");
  }

  std::sort(windows.begin(), windows.end(), [](const TimeWindow& l, const TimeWindow& r) {
    return std::tie(l.start, l.end, l.a, l.b) < std::tie(r.start, r.end, r.a, r.b);
  });
  for (std::size_t i = 0; i < windows.size(); ++i) windows[i].wid = static_cast<WindowId>(i + 1);
  s.windows = std::move(windows);

  // Towers: the destination plus a few fixed ground stations.
  const int towers = std::clamp(n / 6, 2, 5);
  s.nodes.back().kind = NodeKind::Tower;
  std::vector<int> others;
  for (int i = 1; i < n - 1; ++i) others.push_back(i);
  draw.shuffle(others);
  for (int t = 0; t < towers - 1 && t < static_cast<int>(others.size()); ++t) s.nodes[others[t]].kind = NodeKind::Tower;

  std::vector<NodeId> relay_ids(chain.begin() + 1, chain.end() - 1);
  draw.shuffle(relay_ids);
  for (int m = 0; m < p.n_malicious; ++m) s.attack.delays[relay_ids[m]] = p.delay;

  validate(s);
  return s;
}

std::optional<GeneratorParams> preset(std::string_view name, std::uint64_t seed) {
  struct Row {
    std::string_view name;
    int nodes, windows, malicious;
  };
  static constexpr std::array<Row, 5> rows{{
      {"table2-row1", 7, 10, 2},
      {"table2-row2", 10, 20, 2},
      {"table2-row3", 15, 30, 3},
      {"table2-row4", 20, 40, 4},
      {"table2-row5", 30, 50, 5},
  }};
  for (const auto& r : rows) {
    if (r.name == name) {
      GeneratorParams p;
      p.n_nodes = r.nodes;
      p.n_windows = r.windows;
      p.n_malicious = r.malicious;
      p.horizon = seconds(20) * r.windows;
      p.seed = seed;
      return p;
    }
  }
  return std::nullopt;
}

}  // namespace tda
