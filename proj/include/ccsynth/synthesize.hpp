#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccsynth/closure.hpp"
#include "ccsynth/compose.hpp"
#include "ccsynth/formula.hpp"
#include "ccsynth/localize.hpp"

namespace ccsynth {

/// A position of a strategy whose state carries a shared property.
struct SyncPoint {
  std::size_t index = 0;  // into prefix followed by period
  Property property;
  std::vector<AgentId> co_owners;  // the other agents sharing the property

  bool operator==(const SyncPoint&) const = default;
};

/// Control and communication strategy: a trajectory of the agent's
/// transition system given by state names, finite or lasso-shaped.
struct CcStrategy {
  AgentId agent;
  Lasso<std::string> run;
  std::vector<SyncPoint> sync_points;

  bool operator==(const CcStrategy&) const = default;
};

/// Sync points of a run: every position whose label is owned by two or more agents.
std::vector<SyncPoint> sync_points(const Lasso<std::string>& run, const TransitionSystem& ts, const Distribution& d);

/// The word of properties generated by a strategy. Throws std::out_of_range
/// for unknown state names.
LassoWord strategy_word(const CcStrategy& s, const TransitionSystem& ts);

/// An agent stuck at a shared property, waiting for an owner that will not
/// reach it.
struct WaitEdge {
  AgentId waiting;
  AgentId on;
  Property property;

  bool operator==(const WaitEdge&) const = default;
};

struct Verification {
  bool trajectories_valid = false;
  bool nonempty = false;  // the team language has a word
  bool included = false;  // no team word violates the specification
  std::vector<std::string> problems;
  std::vector<WaitEdge> waits;  // filled when the team language is empty
  std::uint64_t team_states = 0;
  std::uint64_t team_bound = 0;

  bool ok() const { return trajectories_valid && nonempty && included; }
};

/// Rechecks a set of strategies against the specification on a separate
/// path from synthesis: trajectories against the transition systems, the
/// team language of the generated words for nonemptiness, and its
/// intersection with the automaton of !spec for emptiness. Team words must
/// be infinite to satisfy the specification, so at least one word must be
/// infinite. Problems are reported, not thrown.
Verification verify_strategies(const std::vector<CcStrategy>& strategies, const Formula& spec, const Distribution& d,
                               const std::vector<TransitionSystem>& agents,
                               std::size_t max_states = kDefaultMaxProductStates);

/// Waits reached by running the words greedily: individual letters are
/// taken as soon as possible, shared ones once every owner is at them.
std::vector<WaitEdge> diagnose_waits(const std::vector<std::pair<AgentId, LassoWord>>& words, const Distribution& d);

enum class Verdict { Success, NotTraceClosed, EmptyIntersection };

std::string to_string(Verdict v);

struct SynthesisStats {
  std::uint32_t spec_states = 0;
  std::uint32_t negated_spec_states = 0;
  std::uint32_t commutation_states = 0;
  std::uint64_t closure_product_states = 0;
  std::vector<std::uint32_t> local_spec_states;     // per agent
  std::vector<std::uint32_t> local_product_states;  // per agent, after pruning
  std::uint64_t product_states = 0;                 // reachable states of the product with the specification
  std::uint64_t product_transitions = 0;
  std::uint64_t product_bound = 0;  // product of the component sizes
};

struct SynthesisReport {
  Verdict verdict = Verdict::EmptyIntersection;
  std::optional<std::pair<LassoWord, LassoWord>> closure_witness;
  LassoWord word;
  std::vector<std::pair<AgentId, LassoWord>> local_words;
  std::vector<CcStrategy> strategies;
  Verification verification;
  SynthesisStats stats;
};

struct SynthesisOptions {
  std::size_t max_product_states = kDefaultMaxProductStates;
  bool verify = true;
};

/// Full pipeline: translation of spec and !spec, trace-closure check,
/// per-agent projection and product with the agent's transition system,
/// synchronous product intersected with the specification, word selection,
/// and one trajectory per agent generating its projection of the word.
/// `agents` must hold one transition system per agent of d whose alphabet
/// is the agent's alphabet; throws std::invalid_argument otherwise.
/// SizeGuardExceeded propagates.
SynthesisReport synthesize(const Formula& spec, const Distribution& d, const std::vector<TransitionSystem>& agents,
                           const SynthesisOptions& options = {});

/// Transition system of an agent; throws std::invalid_argument if absent.
const TransitionSystem& system_of(const std::vector<TransitionSystem>& agents, const AgentId& id);

}  // namespace ccsynth
