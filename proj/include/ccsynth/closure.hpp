#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ccsynth/automata.hpp"

namespace ccsynth {

using AgentId = std::string;

/// Per-agent property alphabets. The global alphabet is their union.
class Distribution {
 public:
  Distribution() = default;
  /// Throws std::invalid_argument on duplicate agent ids or an empty alphabet.
  explicit Distribution(std::vector<std::pair<AgentId, PropertySet>> alphabets);

  const std::vector<AgentId>& agents() const { return agents_; }
  const PropertySet& alphabet(const AgentId& agent) const;
  const PropertySet& global() const { return global_; }
  /// Agents whose alphabet contains p, in agent order.
  std::vector<AgentId> owners(const Property& p) const;
  bool is_shared(const Property& p) const { return owners(p).size() > 1; }

 private:
  std::vector<AgentId> agents_;
  std::map<AgentId, PropertySet> alphabets_;
  PropertySet global_;
};

/// Ordered pairs of properties that no agent owns together. Symmetric and
/// irreflexive.
using IndependenceRelation = std::set<std::pair<Property, Property>>;

IndependenceRelation independence(const Distribution& d);

/// Pair-letter automaton accepting pairs of equivalent words: state 0 is
/// initial and accepting with a self-loop on (s,s) for every property, and
/// every independent (s,t) adds one state entered on (s,t) and left on (t,s).
BuchiAutomaton commutation_automaton(const Distribution& d);

/// Copy of b over the pair alphabet `pairs` that reads only one track
/// (0 = first, 1 = second).
BuchiAutomaton lift_to_track(const BuchiAutomaton& b, const std::vector<Letter>& pairs, int track);

struct ClosureVerdict {
  bool closed = true;
  /// When not closed: w accepted by the spec, w' rejected, w ~ w'.
  std::optional<std::pair<LassoWord, LassoWord>> witness;
  std::uint32_t product_states = 0;
  std::uint32_t commutation_states = 0;
};

/// Decides whether L(b_phi) is closed under trace equivalence. b_not_phi must
/// accept the complement of L(b_phi). Throws std::invalid_argument unless
/// both automata read exactly the single letters of d.global().
ClosureVerdict is_trace_closed(const BuchiAutomaton& b_phi, const BuchiAutomaton& b_not_phi, const Distribution& d);

/// w1 ~ w2: equal projections onto every agent alphabet.
bool trace_equivalent(const LassoWord& w1, const LassoWord& w2, const Distribution& d);

}  // namespace ccsynth
