#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccsynth/closure.hpp"
#include "ccsynth/synthesize.hpp"

namespace ccsynth {

/// One step of one agent: it enters `state`. `property` is set when a
/// property gets satisfied by this step; for a shared property that is the
/// step of the last owner to arrive, and every owner leaves together.
struct SimEvent {
  std::size_t index = 0;
  AgentId agent;
  std::string state;
  std::optional<Property> property;

  bool operator==(const SimEvent&) const = default;
};

enum class Outcome { AllFinished, BoundReached, Deadlock };

std::string to_string(Outcome o);

struct SimTrace {
  std::uint64_t seed = 0;
  std::vector<SimEvent> events;
  std::vector<Property> word;  // satisfied properties in order
  Outcome outcome = Outcome::BoundReached;
  std::vector<WaitEdge> waits;  // when deadlocked

  bool operator==(const SimTrace&) const = default;
};

/// Executes the strategies with a seeded random interleaving: at every step
/// one agent that is not waiting at a shared property is picked uniformly and
/// enters its next state. An agent entering a state with a shared property
/// waits until all owners are at that property; the last arrival satisfies
/// it once and releases everyone. Stops when all runs are finished, when no
/// agent can move (deadlock), or after max_events steps.
/// Strategies are assumed to be valid trajectories (see verify_strategies).
SimTrace run_simulation(const std::vector<CcStrategy>& strategies, const std::vector<TransitionSystem>& agents,
                        const Distribution& d, std::uint64_t seed, std::size_t max_events);

/// True iff the satisfied word of the trace can be read by the synchronous
/// product of the automata of the strategy words.
bool check_prefix_consistency(const SimTrace& trace, const std::vector<CcStrategy>& strategies,
                              const std::vector<TransitionSystem>& agents, const Distribution& d);

/// Line-delimited records `event_index agent_id state property_or_dash`.
std::string export_trace(const SimTrace& trace);

/// The word without the given properties, e.g. dummy requests.
std::vector<Property> without(const std::vector<Property>& word, const PropertySet& hidden);

}  // namespace ccsynth
