#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccsynth/closure.hpp"
#include "ccsynth/localize.hpp"
#include "ccsynth/synthesize.hpp"

namespace ccsynth {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A team of agents with their motion models and a global specification.
/// The distribution is given by the agent alphabets.
struct Model {
  PropertySet alphabet;
  Distribution distribution;
  std::vector<TransitionSystem> agents;
  std::string spec;
};

/// Parses the JSON model format:
///   {"alphabet": [...], "spec": "...",
///    "agents": [{"id", "alphabet", "states", "initial", "transitions": [[s, t], ...],
///                "labels": {state: property}}]}
/// "spec" is optional. Throws ModelError with a description on malformed input.
Model parse_model(const std::string& text);
Model load_model(const std::string& path);

struct StrategiesDocument {
  std::vector<CcStrategy> strategies;
  std::optional<Lasso<Property>> global_word;
};

/// {"agents": [{"id", "prefix", "period", "sync_points": [{"index", "property", "co_owners"}]}],
///  "global_word": {"prefix", "period"}}
std::string write_strategies(const StrategiesDocument& doc);
StrategiesDocument parse_strategies(const std::string& text);
StrategiesDocument load_strategies(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace ccsynth
