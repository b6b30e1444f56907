#pragma once

#include <stdexcept>
#include <string>

namespace tda {

/// Scenario schema or invariant violation. The message names the field.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A packet trace that cannot be mapped onto the time-window graph.
class EmbeddingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Local detector input that disagrees with the neighbor tables.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MetricsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tda
