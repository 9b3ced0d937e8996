#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccsynth/graph.hpp"
#include "ccsynth/word.hpp"

namespace ccsynth {

using StateId = std::uint32_t;

struct Edge {
  std::uint32_t letter;  // index into the owning automaton's alphabet
  StateId target;
  auto operator<=>(const Edge&) const = default;
};

/// Nondeterministic Buchi automaton with dense state ids. Edges of a state
/// are kept sorted by (letter, target) so every traversal is deterministic.
class BuchiAutomaton {
 public:
  BuchiAutomaton() = default;
  /// `alphabet` is sorted and deduplicated.
  explicit BuchiAutomaton(std::vector<Letter> alphabet);

  StateId add_state(std::string name = {});
  void set_initial(StateId s, bool on = true);
  void set_accepting(StateId s, bool on = true);
  void add_transition(StateId from, std::uint32_t letter, StateId to);
  /// Throws std::invalid_argument if the letter is not in the alphabet.
  void add_transition(StateId from, const Letter& letter, StateId to);

  std::uint32_t num_states() const { return static_cast<std::uint32_t>(out_.size()); }
  std::size_t num_transitions() const;
  const std::vector<Letter>& alphabet() const { return alphabet_; }
  std::optional<std::uint32_t> letter_index(const Letter& l) const;
  const Letter& letter(std::uint32_t i) const { return alphabet_[i]; }

  std::span<const Edge> out(StateId s) const { return out_[s]; }
  /// Edges of s reading `letter`.
  std::span<const Edge> out(StateId s, std::uint32_t letter) const;

  const std::vector<StateId>& initial() const { return initial_; }
  bool is_initial(StateId s) const;
  bool is_accepting(StateId s) const { return accepting_[s] != 0; }
  std::vector<StateId> accepting_states() const;
  const std::string& name(StateId s) const { return names_[s]; }
  void set_name(StateId s, std::string n) { names_[s] = std::move(n); }

  graph::Csr to_csr() const;

 private:
  std::vector<Letter> alphabet_;
  std::vector<std::vector<Edge>> out_;
  std::vector<char> accepting_;
  std::vector<StateId> initial_;  // sorted
  std::vector<std::string> names_;
};

/// Buchi automaton with an extra set of terminal finitary accepting states.
/// Finite words are accepted when a run ends in such a state; infinite words
/// use the ordinary Buchi condition.
class MixedBuchiAutomaton {
 public:
  MixedBuchiAutomaton() = default;
  /// Throws std::invalid_argument if some finitary state has an outgoing edge.
  MixedBuchiAutomaton(BuchiAutomaton base, const std::vector<StateId>& finitary);
  explicit MixedBuchiAutomaton(BuchiAutomaton base) : MixedBuchiAutomaton(std::move(base), {}) {}

  const BuchiAutomaton& base() const { return base_; }
  bool is_finitary(StateId s) const { return finitary_[s] != 0; }
  std::vector<StateId> finitary_states() const;

  std::uint32_t num_states() const { return base_.num_states(); }
  const std::vector<Letter>& alphabet() const { return base_.alphabet(); }

 private:
  BuchiAutomaton base_;
  std::vector<char> finitary_;
};

/// Language intersection of Buchi automata over one alphabet: product states
/// (q1..qn, c) where the counter c waits for the c-th acceptance set.
BuchiAutomaton intersect(const std::vector<const BuchiAutomaton*>& automata);
BuchiAutomaton intersect(const std::vector<BuchiAutomaton>& automata);

/// Emptiness check. Returns an accepted lasso when the language is nonempty:
/// the accepting state with the smallest id that lies on a cycle, reached and
/// closed by breadth-first shortest paths.
std::optional<LassoWord> find_accepted_lasso(const BuchiAutomaton& b);
inline bool is_empty(const BuchiAutomaton& b) { return !find_accepted_lasso(b).has_value(); }

/// Membership of a finite or ultimately periodic word.
bool accepts(const MixedBuchiAutomaton& b, const LassoWord& w);
bool accepts(const BuchiAutomaton& b, const LassoWord& w);

/// Automaton accepting exactly w. Infinite w gives |u|+|v| states whose cycle
/// states are accepting; finite w gives |u|+1 states ending in one terminal
/// finitary state. The alphabet defaults to the letters of w.
MixedBuchiAutomaton word_automaton(const LassoWord& w, std::optional<std::vector<Letter>> alphabet = std::nullopt);

/// Removes states that are unreachable or from which no accepting cycle and
/// no finitary state is reachable. Surviving states keep their relative
/// order. `kept`, if given, receives the old id of every new state.
MixedBuchiAutomaton prune(const MixedBuchiAutomaton& b, std::vector<StateId>* kept = nullptr);
BuchiAutomaton prune(const BuchiAutomaton& b, std::vector<StateId>* kept = nullptr);

/// Language-preserving reduction by direct simulation: states that simulate
/// each other are merged (named after the smallest member), transitions into
/// a state simulated by another target of the same source and letter are
/// dropped, and useless states are pruned, until nothing changes.
MixedBuchiAutomaton reduce(const MixedBuchiAutomaton& b);
BuchiAutomaton reduce(const BuchiAutomaton& b);

/// GraphViz rendering: doublecircle for accepting, diamond for finitary.
std::string export_dot(const BuchiAutomaton& b, const std::string& graph_name = "automaton");
std::string export_dot(const MixedBuchiAutomaton& b, const std::string& graph_name = "automaton");

}  // namespace ccsynth
