#pragma once

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tda/embedding.hpp"
#include "tda/scenario.hpp"
#include "tda/trace.hpp"
#include "tda/twig.hpp"

namespace tda {

enum class DetectionMode { Global, Local };
enum class Verdict { Benign, Malicious, Inconclusive };

/// One comparison made by a detector, with the numbers it used.
struct Finding {
  NodeId node{};
  Verdict verdict = Verdict::Benign;
  std::string rule;
  std::vector<std::pair<std::string, Micros>> values;
};

struct DetectionReport {
  DetectionMode mode = DetectionMode::Global;
  std::optional<NodeId> observer;
  std::set<NodeId> flagged;
  std::vector<Finding> findings;  // in evaluation order

  // Global mode: followed path against the cheapest feasible path.
  std::optional<TwigPath> followed;
  std::optional<TwigPath> shortest;

  /// Findings that flagged a node.
  std::vector<Finding> evidence() const;
  bool inconclusive() const;
};

/// Backward scan of the followed path. Throws std::invalid_argument for an
/// undelivered trace and EmbeddingError when the trace cannot be embedded.
DetectionReport detect_global(const Twig& g, const PacketTrace& trace, Micros t_tr);

struct RelayInfo {
  NodeId node{};
  Micros reception_time = 0;
};

/// The two most recent relay records carried by the message.
struct HopMetadata {
  std::optional<RelayInfo> info_1;  // n_{i-2}
  std::optional<RelayInfo> info_2;  // n_{i-1}, the immediate predecessor
};

struct WindowSpan {
  std::string name;
  Micros start = 0;
  Micros end = 0;
};

class NeighborTables {
 public:
  static NeighborTables build(const Twig& g);

  const std::set<NodeId>& one_hop(NodeId n) const;
  const std::set<NodeId>& two_hop(NodeId n) const;
  /// Split windows between a pair ordered by (start, end, name).
  const std::vector<WindowSpan>& windows(NodeId a, NodeId b) const;

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<NodeId, NodeId>& p) const {
      return (static_cast<std::size_t>(raw(p.first)) << 32) ^ raw(p.second);
    }
  };
  std::unordered_map<NodeId, std::set<NodeId>> one_;
  std::unordered_map<NodeId, std::set<NodeId>> two_;
  std::unordered_map<std::pair<NodeId, NodeId>, std::vector<WindowSpan>, PairHash> pair_;
};

struct LocalObservation {
  NodeId observer{};
  Micros reception_time = 0;
  std::optional<std::string> inbound_window;  // split window the message arrived in
};

/// Timing checks one receiver can make from the carried metadata. Throws
/// InconsistencyError when the tables have no window with the predecessor.
DetectionReport detect_local(const LocalObservation& obs, const HopMetadata& meta, const NeighborTables& tables,
                             Micros t_tr);

struct Alert {
  NodeId suspect{};
  NodeId observer{};
  std::vector<NodeId> recipients;  // 2-hop neighborhood of the observer
};

struct LocalRun {
  std::vector<DetectionReport> reports;  // one per receiving hop
  std::vector<Alert> alerts;

  std::set<NodeId> flagged() const;
};

LocalRun run_local_pipeline(const Scenario& s, const Twig& g, const PacketTrace& trace);

}  // namespace tda
