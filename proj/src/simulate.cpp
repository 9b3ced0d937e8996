#include "ccsynth/simulate.hpp"

#include <map>
#include <random>
#include <sstream>

namespace ccsynth {

namespace {

struct Agent {
  AgentId id;
  const TransitionSystem* ts = nullptr;
  const Lasso<std::string>* run = nullptr;
  std::size_t cursor = 0;  // next position of the run to enter
  std::optional<Property> waiting;

  bool done() const { return run->is_finite() && cursor >= run->prefix.size(); }
  const std::string& next_state() const { return run->at(cursor); }
};

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::AllFinished:
      return "AllFinished";
    case Outcome::BoundReached:
      return "BoundReached";
    case Outcome::Deadlock:
      return "Deadlock";
  }
  return "?";
}

SimTrace run_simulation(const std::vector<CcStrategy>& strategies, const std::vector<TransitionSystem>& agents,
                        const Distribution& d, std::uint64_t seed, std::size_t max_events) {
  SimTrace trace;
  trace.seed = seed;
  std::vector<Agent> team;
  std::map<AgentId, std::size_t> index;
  for (const auto& s : strategies) {
    index[s.agent] = team.size();
    team.push_back({s.agent, &system_of(agents, s.agent), &s.run, 0, std::nullopt});
  }
  std::mt19937_64 rng(seed);

  const auto owners = [&](const Property& p) {
    std::vector<std::size_t> out;
    for (const auto& id : d.owners(p))
      if (auto it = index.find(id); it != index.end()) out.push_back(it->second);
    return out;
  };

  while (trace.events.size() < max_events) {
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < team.size(); ++i)
      if (!team[i].done() && !team[i].waiting) ready.push_back(i);
    if (ready.empty()) break;
    auto& a = team[ready[std::uniform_int_distribution<std::size_t>(0, ready.size() - 1)(rng)]];

    SimEvent e{trace.events.size(), a.id, a.next_state(), std::nullopt};
    const auto& p = a.ts->label(a.ts->state(e.state));
    const auto shared = owners(p);
    if (shared.size() < 2) {
      e.property = p;
      ++a.cursor;
    } else {
      a.waiting = p;
      bool all = true;
      for (auto j : shared) all = all && team[j].waiting == p;
      if (all) {
        e.property = p;
        for (auto j : shared) {
          team[j].waiting.reset();
          ++team[j].cursor;
        }
      }
    }
    if (e.property) trace.word.push_back(*e.property);
    trace.events.push_back(std::move(e));
  }

  bool finished = true, moving = false;
  for (const auto& a : team) {
    finished = finished && a.done();
    moving = moving || (!a.done() && !a.waiting);
  }
  if (finished) {
    trace.outcome = Outcome::AllFinished;
  } else if (!moving) {
    trace.outcome = Outcome::Deadlock;
    for (const auto& a : team) {
      if (!a.waiting) continue;
      for (auto j : owners(*a.waiting))
        if (team[j].waiting != a.waiting) trace.waits.push_back({a.id, team[j].id, *a.waiting});
    }
  } else {
    trace.outcome = Outcome::BoundReached;
  }
  return trace;
}

bool check_prefix_consistency(const SimTrace& trace, const std::vector<CcStrategy>& strategies,
                              const std::vector<TransitionSystem>& agents, const Distribution& d) {
  std::vector<MixedBuchiAutomaton> parts;
  for (const auto& s : strategies)
    parts.push_back(word_automaton(strategy_word(s, system_of(agents, s.agent)), single_letters(d.alphabet(s.agent))));
  std::vector<Letter> prefix;
  for (const auto& p : trace.word) prefix.push_back(Letter::single(p));
  return reads_prefix(SyncProduct(std::move(parts)), prefix);
}

std::string export_trace(const SimTrace& trace) {
  std::ostringstream os;
  for (const auto& e : trace.events) os << e.index << ' ' << e.agent << ' ' << e.state << ' ' << e.property.value_or("-") << '\n';
  return os.str();
}

std::vector<Property> without(const std::vector<Property>& word, const PropertySet& hidden) {
  std::vector<Property> out;
  for (const auto& p : word)
    if (!hidden.contains(p)) out.push_back(p);
  return out;
}

}  // namespace ccsynth
