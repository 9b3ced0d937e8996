#pragma once

#include "ccsynth/automata.hpp"
#include "ccsynth/formula.hpp"

namespace ccsynth {

/// Tableau translation (node splitting over until/release obligations) into a
/// generalized Buchi graph, degeneralized with a round-robin counter over the
/// until subformulas in discovery order. Letters are the single properties of
/// `alphabet`: exactly one property holds at every position. Unreachable
/// states and states that cannot reach an accepting cycle are removed.
///
/// `f` need not be in negation normal form; it is normalized first. Throws
/// std::invalid_argument if f mentions an atom outside the alphabet.
BuchiAutomaton ltl_to_buchi(const Formula& f, const PropertySet& alphabet);

/// Automaton for the complement language, obtained by translating !f.
BuchiAutomaton ltl_to_buchi_negated(const Formula& f, const PropertySet& alphabet);

}  // namespace ccsynth
