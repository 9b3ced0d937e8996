// Random generators and brute-force enumerators shared by the test binaries.
#pragma once

#include <functional>
#include <random>
#include <vector>

#include "ccsynth/automata.hpp"
#include "ccsynth/formula.hpp"
#include "ccsynth/localize.hpp"

namespace gen {

using ccsynth::Formula;
using ccsynth::LassoWord;
using ccsynth::Property;
using ccsynth::PropertySet;

inline std::vector<Property> names(std::size_t n) {
  std::vector<Property> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

inline PropertySet alphabet(std::size_t n) {
  auto v = names(n);
  return {v.begin(), v.end()};
}

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline Formula formula(std::mt19937_64& rng, const std::vector<Property>& atoms, int depth, bool release = true) {
  if (depth == 0 || pick(rng, 4) == 0) {
    const std::size_t k = pick(rng, atoms.size() + 2);
    if (k == atoms.size()) return pick(rng, 2) ? Formula::truth() : Formula::falsity();
    if (k == atoms.size() + 1) return Formula::atom(atoms[pick(rng, atoms.size())]);
    return Formula::atom(atoms[k]);
  }
  std::size_t op = pick(rng, 10);
  if (!release && op == 8) op = 7;
  switch (op) {
    case 0: return Formula::negation(formula(rng, atoms, depth - 1, release));
    case 1: return Formula::next(formula(rng, atoms, depth - 1, release));
    case 2: return Formula::eventually(formula(rng, atoms, depth - 1, release));
    case 3: return Formula::always(formula(rng, atoms, depth - 1, release));
    case 4: return Formula::conj(formula(rng, atoms, depth - 1, release), formula(rng, atoms, depth - 1, release));
    case 5: return Formula::disj(formula(rng, atoms, depth - 1, release), formula(rng, atoms, depth - 1, release));
    case 6: return Formula::implies(formula(rng, atoms, depth - 1, release), formula(rng, atoms, depth - 1, release));
    case 8: return Formula::release(formula(rng, atoms, depth - 1, release), formula(rng, atoms, depth - 1, release));
    default: return Formula::until(formula(rng, atoms, depth - 1, release), formula(rng, atoms, depth - 1, release));
  }
}

inline LassoWord lasso(std::mt19937_64& rng, const std::vector<Property>& atoms, std::size_t max_prefix,
                       std::size_t max_period) {
  std::vector<Property> u, v;
  const std::size_t nu = pick(rng, max_prefix + 1);
  const std::size_t nv = 1 + pick(rng, max_period);
  for (std::size_t i = 0; i < nu; ++i) u.push_back(atoms[pick(rng, atoms.size())]);
  for (std::size_t i = 0; i < nv; ++i) v.push_back(atoms[pick(rng, atoms.size())]);
  return ccsynth::make_word(u, v);
}

/// Calls f on every word of length exactly n over atoms.
inline void each_word(const std::vector<Property>& atoms, std::size_t n,
                      const std::function<void(const std::vector<Property>&)>& f) {
  std::vector<std::size_t> idx(n, 0);
  std::vector<Property> w(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) w[i] = atoms[idx[i]];
    f(w);
    std::size_t i = 0;
    while (i < n && ++idx[i] == atoms.size()) idx[i++] = 0;
    if (i == n) return;
  }
}

/// Every lasso with |u| <= max_prefix and 1 <= |v| <= max_period.
inline std::vector<LassoWord> all_lassos(const std::vector<Property>& atoms, std::size_t max_prefix,
                                         std::size_t max_period) {
  std::vector<LassoWord> out;
  for (std::size_t nu = 0; nu <= max_prefix; ++nu)
    each_word(atoms, nu, [&](const std::vector<Property>& u) {
      for (std::size_t nv = 1; nv <= max_period; ++nv)
        each_word(atoms, nv, [&](const std::vector<Property>& v) { out.push_back(ccsynth::make_word(u, v)); });
    });
  return out;
}

/// Every finite word of length <= max_len.
inline std::vector<LassoWord> all_finite(const std::vector<Property>& atoms, std::size_t max_len) {
  std::vector<LassoWord> out;
  for (std::size_t n = 0; n <= max_len; ++n)
    each_word(atoms, n, [&](const std::vector<Property>& u) { out.push_back(ccsynth::make_word(u)); });
  return out;
}

/// Random Buchi automaton over single letters.
inline ccsynth::BuchiAutomaton automaton(std::mt19937_64& rng, const PropertySet& sigma, std::size_t max_states,
                                         double density = 0.35) {
  ccsynth::BuchiAutomaton b(ccsynth::single_letters(sigma));
  const std::size_t n = 1 + pick(rng, max_states);
  for (std::size_t i = 0; i < n; ++i) b.add_state("s" + std::to_string(i));
  std::bernoulli_distribution edge(density), acc(0.4), init(0.2);
  b.set_initial(0);
  for (ccsynth::StateId q = 0; q < n; ++q) {
    if (q > 0 && init(rng)) b.set_initial(q);
    if (acc(rng)) b.set_accepting(q);
    for (std::uint32_t l = 0; l < sigma.size(); ++l)
      for (ccsynth::StateId t = 0; t < n; ++t)
        if (edge(rng)) b.add_transition(q, l, t);
  }
  return b;
}

/// Random Buchi automaton plus one terminal finitary state with random
/// incoming edges.
inline ccsynth::MixedBuchiAutomaton mixed_automaton(std::mt19937_64& rng, const PropertySet& sigma,
                                                    std::size_t max_states) {
  auto b = automaton(rng, sigma, max_states - 1);
  const auto f = b.add_state("fin");
  std::bernoulli_distribution edge(0.3);
  if (edge(rng)) b.set_initial(f);
  for (ccsynth::StateId q = 0; q < f; ++q)
    for (std::uint32_t l = 0; l < sigma.size(); ++l)
      if (edge(rng)) b.add_transition(q, l, f);
  return ccsynth::MixedBuchiAutomaton(std::move(b), {f});
}

/// Random labelled transition system over sigma.
inline ccsynth::TransitionSystem transition_system(std::mt19937_64& rng, const std::string& id,
                                                   const PropertySet& sigma, std::size_t max_states,
                                                   double density = 0.4) {
  ccsynth::TransitionSystem ts(id, sigma);
  const std::vector<Property> props(sigma.begin(), sigma.end());
  const std::size_t n = 1 + pick(rng, max_states);
  for (std::size_t i = 0; i < n; ++i) ts.add_state("s" + std::to_string(i), props[pick(rng, props.size())]);
  ts.set_initial(0);
  std::bernoulli_distribution edge(density);
  for (std::uint32_t s = 0; s < n; ++s)
    for (std::uint32_t t = 0; t < n; ++t)
      if (edge(rng)) ts.add_transition(s, t);
  return ts;
}

/// Random nonempty subset.
inline PropertySet subset(std::mt19937_64& rng, const PropertySet& s) {
  PropertySet out;
  for (const auto& p : s)
    if (pick(rng, 2)) out.insert(p);
  if (out.empty()) {
    auto it = s.begin();
    std::advance(it, pick(rng, s.size()));
    out.insert(*it);
  }
  return out;
}

}  // namespace gen
