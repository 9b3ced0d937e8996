#include "ccsynth/synthesize.hpp"

#include <algorithm>
#include <map>

#include "ccsynth/translate.hpp"

namespace ccsynth {

namespace {

std::vector<std::string> flatten(const Lasso<std::string>& run) {
  std::vector<std::string> out = run.prefix;
  out.insert(out.end(), run.period.begin(), run.period.end());
  return out;
}

void check_agents(const Distribution& d, const std::vector<TransitionSystem>& agents) {
  if (agents.size() != d.agents().size())
    throw std::invalid_argument("expected " + std::to_string(d.agents().size()) + " transition systems, got " +
                                std::to_string(agents.size()));
  for (const auto& id : d.agents())
    if (system_of(agents, id).alphabet() != d.alphabet(id))
      throw std::invalid_argument("transition system of agent '" + id + "' has a different alphabet");
}

// A trajectory of ts generating w, read off an accepting run of the product
// of the extended system with the automaton of w.
Lasso<std::string> realize(const ExtendedTransitionSystem& hat, const LassoWord& w, std::size_t max_states) {
  const auto& ts = hat.base();
  const auto e = implementable_local(hat, word_automaton(w, single_letters(ts.alphabet())));
  if (e.automaton.num_states() == 0) throw std::logic_error("no trajectory of agent '" + ts.id() + "' generates its word");
  const auto found = find_accepted_word(SyncProduct({e.automaton}), max_states);
  if (!found) throw std::logic_error("no trajectory of agent '" + ts.id() + "' generates its word");
  // run[k + 1] is the state entered on letter k
  const auto state = [&](std::size_t k) { return hat.name(e.origin[found->run[k][0]].first); };
  Lasso<std::string> out;
  const std::size_t u = found->word.prefix.size();
  for (std::size_t k = 1; k <= u; ++k) out.prefix.push_back(state(k));
  for (std::size_t k = u + 1; k <= found->word.size(); ++k) out.period.push_back(state(k));
  return out;
}

std::vector<std::string> check_trajectory(const CcStrategy& s, const TransitionSystem& ts) {
  std::vector<std::string> problems;
  const auto where = "strategy of agent '" + s.agent + "': ";
  const auto states = flatten(s.run);
  if (states.empty()) return {where + "empty run"};
  std::vector<std::uint32_t> ids;
  for (const auto& name : states) {
    try {
      ids.push_back(ts.state(name));
    } catch (const std::out_of_range&) {
      problems.push_back(where + "unknown state '" + name + "'");
    }
  }
  if (!problems.empty()) return problems;
  if (ids.front() != ts.initial()) problems.push_back(where + "does not start at '" + ts.name(ts.initial()) + "'");
  for (std::size_t k = 0; k + 1 < ids.size(); ++k)
    if (!ts.has_transition(ids[k], ids[k + 1]))
      problems.push_back(where + "no transition " + states[k] + " -> " + states[k + 1]);
  if (!s.run.is_finite()) {
    const auto first = ids[s.run.prefix.size()];
    if (!ts.has_transition(ids.back(), first))
      problems.push_back(where + "period does not close: no transition " + states.back() + " -> " + ts.name(first));
  }
  return problems;
}

}  // namespace

const TransitionSystem& system_of(const std::vector<TransitionSystem>& agents, const AgentId& id) {
  for (const auto& ts : agents)
    if (ts.id() == id) return ts;
  throw std::invalid_argument("no transition system for agent '" + id + "'");
}

std::vector<SyncPoint> sync_points(const Lasso<std::string>& run, const TransitionSystem& ts, const Distribution& d) {
  std::vector<SyncPoint> out;
  const auto states = flatten(run);
  for (std::size_t k = 0; k < states.size(); ++k) {
    const auto& p = ts.label(ts.state(states[k]));
    auto owners = d.owners(p);
    if (owners.size() < 2) continue;
    std::erase(owners, ts.id());
    out.push_back({k, p, std::move(owners)});
  }
  return out;
}

LassoWord strategy_word(const CcStrategy& s, const TransitionSystem& ts) {
  Lasso<Property> w;
  for (const auto& name : s.run.prefix) w.prefix.push_back(ts.label(ts.state(name)));
  for (const auto& name : s.run.period) w.period.push_back(ts.label(ts.state(name)));
  return letters_of(w);
}

std::vector<WaitEdge> diagnose_waits(const std::vector<std::pair<AgentId, LassoWord>>& words, const Distribution& d) {
  const std::size_t n = words.size();
  std::map<AgentId, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[words[i].first] = i;
  std::vector<std::size_t> cursor(n, 0);
  const auto done = [&](std::size_t i) { return words[i].second.is_finite() && cursor[i] >= words[i].second.prefix.size(); };
  const auto next = [&](std::size_t i) -> const Property& { return words[i].second.at(cursor[i]).first; };
  const auto at = [&](std::size_t j, const Property& p) { return !done(j) && next(j) == p; };
  const auto owners_of = [&](const Property& p) {
    std::vector<std::size_t> out;
    for (const auto& id : d.owners(p))
      if (auto it = index.find(id); it != index.end()) out.push_back(it->second);
    return out;
  };
  const auto enabled = [&](std::size_t i) {
    const auto& p = next(i);
    for (auto j : owners_of(p))
      if (!at(j, p)) return false;
    return true;
  };

  std::size_t rounds = 8;
  for (const auto& w : words) rounds += 4 * w.second.size();
  for (std::size_t r = 0; r < rounds; ++r) {
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (done(i) || !enabled(i)) continue;
      const auto p = next(i);
      for (auto j : owners_of(p)) ++cursor[j];
      if (owners_of(p).empty()) ++cursor[i];
      moved = true;
    }
    if (!moved) break;
  }

  // Blocked agents that only wait on finished or blocked agents never move again.
  std::vector<bool> stuck(n, false);
  for (std::size_t i = 0; i < n; ++i) stuck[i] = !done(i) && !enabled(i);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!stuck[i]) continue;
      for (auto j : owners_of(next(i)))
        if (!at(j, next(i)) && !done(j) && !stuck[j]) {
          stuck[i] = false;
          changed = true;
          break;
        }
    }
  }
  std::vector<WaitEdge> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!stuck[i]) continue;
    for (auto j : owners_of(next(i)))
      if (!at(j, next(i))) out.push_back({words[i].first, words[j].first, next(i)});
  }
  return out;
}

Verification verify_strategies(const std::vector<CcStrategy>& strategies, const Formula& spec, const Distribution& d,
                               const std::vector<TransitionSystem>& agents, std::size_t max_states) {
  Verification v;
  std::vector<std::pair<AgentId, LassoWord>> words;
  for (const auto& s : strategies)
    if (std::ranges::find(d.agents(), s.agent) == d.agents().end())
      v.problems.push_back("strategy for unknown agent '" + s.agent + "'");
  for (const auto& id : d.agents()) {
    auto it = std::ranges::find_if(strategies, [&](const CcStrategy& s) { return s.agent == id; });
    if (it == strategies.end()) {
      v.problems.push_back("no strategy for agent '" + id + "'");
      continue;
    }
    const TransitionSystem* ts = nullptr;
    try {
      ts = &system_of(agents, id);
    } catch (const std::invalid_argument& e) {
      v.problems.push_back(e.what());
      continue;
    }
    auto problems = check_trajectory(*it, *ts);
    if (problems.empty()) words.emplace_back(id, strategy_word(*it, *ts));
    v.problems.insert(v.problems.end(), problems.begin(), problems.end());
  }
  v.trajectories_valid = v.problems.empty();
  if (!v.trajectories_valid) return v;

  std::vector<MixedBuchiAutomaton> parts;
  for (const auto& [id, w] : words) parts.push_back(word_automaton(w, single_letters(d.alphabet(id))));
  const SyncProduct team(std::move(parts));
  try {
    ProductStats stats;
    v.nonempty = find_accepted_word(team, max_states, &stats).has_value();
    v.team_states = stats.states;
    v.team_bound = stats.bound;
    if (!v.nonempty) {
      v.problems.push_back("team language is empty");
      v.waits = diagnose_waits(words, d);
      for (const auto& e : v.waits)
        v.problems.push_back("agent '" + e.waiting + "' waits at " + e.property + " for agent '" + e.on + "'");
    }
    const bool infinite = std::ranges::any_of(words, [](const auto& w) { return !w.second.is_finite(); });
    if (!infinite) {
      v.included = !v.nonempty;
      if (v.nonempty) v.problems.push_back("every word is finite, so team words are finite and violate the specification");
    } else {
      const SyncProduct negated({MixedBuchiAutomaton(ltl_to_buchi_negated(spec, d.global()))});
      const auto bad = find_accepted_word(intersect_products(team, negated), max_states);
      v.included = !bad;
      if (bad) v.problems.push_back("team word violates the specification: " + to_string(bad->word));
    }
  } catch (const SizeGuardExceeded& e) {
    v.problems.push_back(e.what());
  }
  return v;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Success:
      return "Success";
    case Verdict::NotTraceClosed:
      return "NotTraceClosed";
    case Verdict::EmptyIntersection:
      return "EmptyIntersection";
  }
  return "?";
}

SynthesisReport synthesize(const Formula& spec, const Distribution& d, const std::vector<TransitionSystem>& agents,
                           const SynthesisOptions& options) {
  check_agents(d, agents);
  SynthesisReport r;
  const auto& sigma = d.global();
  const auto b_phi = reduce(ltl_to_buchi(spec, sigma));
  const auto b_not = reduce(ltl_to_buchi_negated(spec, sigma));
  r.stats.spec_states = b_phi.num_states();
  r.stats.negated_spec_states = b_not.num_states();

  const auto closure = is_trace_closed(b_phi, b_not, d);
  r.stats.commutation_states = closure.commutation_states;
  r.stats.closure_product_states = closure.product_states;
  if (!closure.closed) {
    r.verdict = Verdict::NotTraceClosed;
    r.closure_witness = closure.witness;
    return r;
  }

  std::vector<ExtendedTransitionSystem> hats;
  std::vector<MixedBuchiAutomaton> locals;
  bool empty = false;
  for (const auto& id : d.agents()) {
    hats.push_back(extend_with_start(system_of(agents, id)));
    const auto bi = reduce(project_spec(b_phi, d.alphabet(id)));
    auto e = reduce(implementable_local(hats.back(), bi).automaton);
    r.stats.local_spec_states.push_back(bi.num_states());
    r.stats.local_product_states.push_back(e.num_states());
    empty = empty || e.num_states() == 0;
    locals.push_back(std::move(e));
  }
  if (empty) {
    r.verdict = Verdict::EmptyIntersection;
    return r;
  }

  const auto product = intersect_products(SyncProduct(std::move(locals)), SyncProduct({MixedBuchiAutomaton(b_phi)}));
  ProductStats stats;
  const auto found = find_accepted_word(product, options.max_product_states, &stats);
  r.stats.product_states = stats.states;
  r.stats.product_transitions = stats.transitions;
  r.stats.product_bound = stats.bound;
  if (!found) {
    r.verdict = Verdict::EmptyIntersection;
    return r;
  }

  r.verdict = Verdict::Success;
  r.word = found->word;
  for (std::size_t i = 0; i < d.agents().size(); ++i) {
    const auto& id = d.agents()[i];
    auto wi = project(r.word, d.alphabet(id));
    CcStrategy s{id, realize(hats[i], wi, options.max_product_states), {}};
    s.sync_points = sync_points(s.run, hats[i].base(), d);
    r.local_words.emplace_back(id, std::move(wi));
    r.strategies.push_back(std::move(s));
  }
  if (options.verify) r.verification = verify_strategies(r.strategies, spec, d, agents, options.max_product_states);
  return r;
}

}  // namespace ccsynth
