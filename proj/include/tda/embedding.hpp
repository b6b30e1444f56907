#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "tda/trace.hpp"
#include "tda/twig.hpp"

namespace tda {

/// A packet trace mapped onto the graph (the followed path).
struct EmbeddedTrace {
  TwigPath path;
  /// Position in path.vertices where each hop's holder first appears: the
  /// receive vertex, or the first send vertex for the source.
  std::vector<std::size_t> hop_position;
  /// Split window of each inbound transmission (index 0 unused).
  std::vector<WindowIndex> hop_window;
};

/// Split window carrying a transmission from `from` to `to` that starts at
/// `send`. A recorded window name wins when it is consistent; otherwise the
/// piece containing the instant is chosen, preferring the one that starts
/// latest. Throws EmbeddingError when no piece contains the instant.
WindowIndex transmission_window(const Twig& g, NodeId from, NodeId to, Micros send,
                                std::optional<std::string_view> recorded = std::nullopt);

/// Maps each physical hop onto the within-window edge of its transmitting
/// window and joins consecutive hops at a relay through that relay's own
/// vertices. Throws EmbeddingError naming the offending hop.
EmbeddedTrace embed_trace(const Twig& g, const PacketTrace& trace, Micros t_tr);

}  // namespace tda
