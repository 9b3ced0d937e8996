#include "ccsynth/closure.hpp"

#include <stdexcept>

namespace ccsynth {

Distribution::Distribution(std::vector<std::pair<AgentId, PropertySet>> alphabets) {
  for (auto& [id, sigma] : alphabets) {
    if (sigma.empty()) throw std::invalid_argument("agent '" + id + "' has an empty alphabet");
    if (!alphabets_.emplace(id, sigma).second) throw std::invalid_argument("duplicate agent id '" + id + "'");
    agents_.push_back(id);
    global_.insert(sigma.begin(), sigma.end());
  }
}

const PropertySet& Distribution::alphabet(const AgentId& agent) const {
  auto it = alphabets_.find(agent);
  if (it == alphabets_.end()) throw std::out_of_range("unknown agent '" + agent + "'");
  return it->second;
}

std::vector<AgentId> Distribution::owners(const Property& p) const {
  std::vector<AgentId> out;
  for (const auto& a : agents_)
    if (alphabets_.at(a).contains(p)) out.push_back(a);
  return out;
}

IndependenceRelation independence(const Distribution& d) {
  IndependenceRelation rel;
  for (const auto& s : d.global())
    for (const auto& t : d.global()) {
      if (s == t) continue;
      bool together = false;
      for (const auto& a : d.agents()) {
        const auto& sigma = d.alphabet(a);
        if (sigma.contains(s) && sigma.contains(t)) {
          together = true;
          break;
        }
      }
      if (!together) rel.emplace(s, t);
    }
  return rel;
}

BuchiAutomaton commutation_automaton(const Distribution& d) {
  const auto rel = independence(d);
  std::vector<Letter> letters;
  for (const auto& s : d.global()) letters.push_back(Letter::pair(s, s));
  for (const auto& [s, t] : rel) letters.push_back(Letter::pair(s, t));
  BuchiAutomaton c(std::move(letters));
  const StateId q0 = c.add_state("q0");
  c.set_initial(q0);
  c.set_accepting(q0);
  for (const auto& s : d.global()) c.add_transition(q0, Letter::pair(s, s), q0);
  for (const auto& [s, t] : rel) {
    const StateId q = c.add_state(s + "|" + t);
    c.add_transition(q0, Letter::pair(s, t), q);
    c.add_transition(q, Letter::pair(t, s), q0);
  }
  return c;
}

BuchiAutomaton lift_to_track(const BuchiAutomaton& b, const std::vector<Letter>& pairs, int track) {
  BuchiAutomaton out(pairs);
  for (StateId q = 0; q < b.num_states(); ++q) {
    out.add_state(b.name(q));
    out.set_accepting(q, b.is_accepting(q));
  }
  for (StateId q : b.initial()) out.set_initial(q);
  for (std::uint32_t l = 0; l < out.alphabet().size(); ++l) {
    const Letter& pair = out.letter(l);
    auto src = b.letter_index(Letter::single(track == 0 ? pair.first : pair.second));
    if (!src) continue;
    for (StateId q = 0; q < b.num_states(); ++q)
      for (const auto& e : b.out(q, *src)) out.add_transition(q, l, e.target);
  }
  return out;
}

ClosureVerdict is_trace_closed(const BuchiAutomaton& b_phi, const BuchiAutomaton& b_not_phi, const Distribution& d) {
  const auto sigma = single_letters(d.global());
  if (b_phi.alphabet() != sigma || b_not_phi.alphabet() != sigma)
    throw std::invalid_argument("closure check: automata alphabets differ from the distribution's alphabet");

  const auto c = commutation_automaton(d);
  const auto first = lift_to_track(b_phi, c.alphabet(), 0);
  const auto second = lift_to_track(b_not_phi, c.alphabet(), 1);
  const auto product = intersect(std::vector<const BuchiAutomaton*>{&c, &first, &second});

  ClosureVerdict v;
  v.commutation_states = c.num_states();
  v.product_states = product.num_states();
  if (auto w = find_accepted_lasso(product)) {
    LassoWord left, right;
    for (const auto& l : w->prefix) {
      left.prefix.push_back(Letter::single(l.first));
      right.prefix.push_back(Letter::single(l.second));
    }
    for (const auto& l : w->period) {
      left.period.push_back(Letter::single(l.first));
      right.period.push_back(Letter::single(l.second));
    }
    v.closed = false;
    v.witness.emplace(std::move(left), std::move(right));
  }
  return v;
}

bool trace_equivalent(const LassoWord& w1, const LassoWord& w2, const Distribution& d) {
  for (const auto& a : d.agents()) {
    const auto& sigma = d.alphabet(a);
    if (!same_word(project(w1, sigma), project(w2, sigma))) return false;
  }
  return true;
}

}  // namespace ccsynth
