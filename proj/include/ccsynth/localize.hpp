#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ccsynth/automata.hpp"

namespace ccsynth {

/// Motion model of one agent: every state carries exactly one property.
class TransitionSystem {
 public:
  TransitionSystem() = default;
  TransitionSystem(std::string id, PropertySet alphabet) : id_(std::move(id)), alphabet_(std::move(alphabet)) {}

  /// Throws std::invalid_argument on a duplicate name or a label outside the alphabet.
  std::uint32_t add_state(const std::string& name, const Property& label);
  void set_initial(std::uint32_t s) { initial_ = s; }
  void add_transition(std::uint32_t from, std::uint32_t to);

  const std::string& id() const { return id_; }
  const PropertySet& alphabet() const { return alphabet_; }
  std::uint32_t num_states() const { return static_cast<std::uint32_t>(names_.size()); }
  std::uint32_t initial() const { return initial_; }
  const std::string& name(std::uint32_t s) const { return names_[s]; }
  const Property& label(std::uint32_t s) const { return labels_[s]; }
  /// Sorted successor list.
  const std::vector<std::uint32_t>& successors(std::uint32_t s) const { return succ_[s]; }
  bool has_transition(std::uint32_t from, std::uint32_t to) const;
  std::size_t num_transitions() const;
  /// Throws std::out_of_range for unknown names.
  std::uint32_t state(const std::string& name) const;

 private:
  std::string id_;
  PropertySet alphabet_;
  std::vector<std::string> names_;
  std::vector<Property> labels_;
  std::vector<std::vector<std::uint32_t>> succ_;
  std::map<std::string, std::uint32_t> index_;
  std::uint32_t initial_ = 0;
};

/// A transition system with a fresh Start state (id 0) whose only transition
/// leads to the original initial state. Original state s becomes s + 1.
class ExtendedTransitionSystem {
 public:
  static constexpr std::uint32_t kStart = 0;
  /// Observation of Start; never a property of any alphabet.
  inline static const Property kStartLabel = "$start";

  explicit ExtendedTransitionSystem(TransitionSystem ts);

  const TransitionSystem& base() const { return base_; }
  std::uint32_t num_states() const { return base_.num_states() + 1; }
  std::uint32_t initial() const { return kStart; }
  const std::vector<std::uint32_t>& successors(std::uint32_t s) const { return succ_[s]; }
  const Property& label(std::uint32_t s) const { return s == kStart ? kStartLabel : base_.label(s - 1); }
  std::string name(std::uint32_t s) const { return s == kStart ? "Start" : base_.name(s - 1); }
  std::size_t num_transitions() const { return base_.num_transitions() + 1; }

 private:
  TransitionSystem base_;
  std::vector<std::vector<std::uint32_t>> succ_;
};

ExtendedTransitionSystem extend_with_start(const TransitionSystem& ts);

/// Automaton over the single letters of `sigma_i` accepting the projections
/// onto sigma_i of the words accepted by b. Letters outside sigma_i become
/// silent moves that are folded into the visible transitions; accepting
/// visits made during silent moves are kept through accepting copies of the
/// targets ("name^acc"), and words whose projection is finite end in
/// terminal finitary twins ("name^fin"). Throws std::invalid_argument unless
/// sigma_i is a subset of b's single-letter alphabet.
MixedBuchiAutomaton project_spec(const BuchiAutomaton& b, const PropertySet& sigma_i);

/// Product of an extended transition system with a local specification.
struct LocalProduct {
  MixedBuchiAutomaton automaton;
  /// Per product state: (extended TS state, local specification state).
  std::vector<std::pair<std::uint32_t, StateId>> origin;
  /// Reachable product states before pruning.
  std::uint32_t unpruned_states = 0;
};

/// Pairs (s, q) moving to (s', q') on h(s') when s -> s' and q' is a
/// successor of q on h(s'). Accepting and finitary states are inherited from
/// the specification, except that pairs with Start are never finitary, since
/// a trajectory is nonempty. Useless states are pruned. Throws
/// std::invalid_argument if the alphabets differ.
LocalProduct implementable_local(const ExtendedTransitionSystem& ts, const MixedBuchiAutomaton& spec);

}  // namespace ccsynth
