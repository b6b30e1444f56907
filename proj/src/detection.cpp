#include "tda/detection.hpp"

#include <stdexcept>

namespace tda {

std::vector<Finding> DetectionReport::evidence() const {
  std::vector<Finding> out;
  for (const auto& f : findings) {
    if (f.verdict == Verdict::Malicious) out.push_back(f);
  }
  return out;
}

bool DetectionReport::inconclusive() const {
  for (const auto& f : findings) {
    if (f.verdict == Verdict::Inconclusive) return true;
  }
  return false;
}

DetectionReport detect_global(const Twig& g, const PacketTrace& trace, Micros t_tr) {
  if (!trace.delivered) throw std::invalid_argument("detect_global: message was not delivered");
  DetectionReport report;
  report.mode = DetectionMode::Global;
  const auto& hops = trace.hops;
  if (hops.size() < 2) return report;

  const EmbeddedTrace fp = embed_trace(g, trace, t_tr);
  const auto& p = fp.path.vertices;
  std::vector<Micros> prefix(p.size(), 0);
  for (std::size_t k = 1; k < p.size(); ++k) prefix[k] = prefix[k - 1] + path_weight(g, std::span(p).subspan(k - 1, 2));
  report.followed = fp.path;

  // Paths must reach each anchor no later than the message actually did.
  std::size_t anchor_hop = hops.size() - 1;
  std::size_t anchor_pos = p.size() - 1;
  auto query = [&](std::size_t from_pos, Micros clock) {
    TimedQuery q;
    q.sources = {{p[from_pos], 0}};
    q.clock = clock;
    if (anchor_hop == hops.size() - 1) {
      q.target = trace.destination;
    } else {
      q.target = p[anchor_pos];
    }
    q.deadline = hops[anchor_hop].reception_time;
    return timed_shortest_path(g, q);
  };

  const auto top = query(0, hops[0].reception_time);
  if (top) report.shortest = top->path;
  if (top && top->path.total_weight == fp.path.total_weight) return report;

  for (std::size_t i = hops.size() - 1; i-- > 0;) {
    const std::size_t r = fp.hop_position[i];
    const Micros segment = prefix[anchor_pos] - prefix[r];
    Finding f;
    f.node = hops[i].node;
    f.rule = "segment-weight";
    f.values = {{"followed", segment}};
    const auto sp = query(r, hops[i].reception_time);
    if (!sp) {
      f.verdict = Verdict::Inconclusive;
    } else {
      f.values.emplace_back("shortest", sp->path.total_weight);
      if (segment > sp->path.total_weight) {
        f.verdict = Verdict::Malicious;
        report.flagged.insert(f.node);
        anchor_pos = r;
        anchor_hop = i;
      }
    }
    report.findings.push_back(std::move(f));
  }
  return report;
}

}  // namespace tda
