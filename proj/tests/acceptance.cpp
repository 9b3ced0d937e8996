// Acceptance runner: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>

#include "ccsynth/model_io.hpp"
#include "ccsynth/simulate.hpp"
#include "ccsynth/translate.hpp"
#include "oracles.hpp"
#include "props.hpp"

using namespace ccsynth;

namespace {

std::string model_path(const std::string& name) { return std::string(CCSYNTH_MODELS_DIR) + "/" + name; }

// Peak resident set of this process in kB.
std::size_t peak_rss_kb() {
  std::ifstream f("/proc/self/status");
  std::string line;
  while (std::getline(f, line))
    if (line.rfind("VmHWM:", 0) == 0) return std::stoul(line.substr(6));
  return 0;
}

struct Result {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (ok) detail = what;
    ok = false;
  }
};

Result from(const props::Tally& t, const std::string& label) {
  Result r;
  r.require(t.ok(), label + ": " + std::to_string(t.failures) + " failures, first: " + t.first_failure);
  if (r.ok)
    r.detail = label + ": " + std::to_string(t.instances) + " instances, " + std::to_string(t.checks) + " checks";
  return r;
}

Result merge(const Result& a, const Result& b) {
  if (!a.ok) return a;
  if (!b.ok) return b;
  return {true, a.detail + "; " + b.detail};
}

// 1. Three-letter commutation automaton.
Result commutation_structure() {
  Result r;
  const Distribution d({{"1", {"a", "b"}}, {"2", {"a", "c"}}});
  const auto c = commutation_automaton(d);
  r.require(c.num_states() == 3, "expected 3 states, got " + std::to_string(c.num_states()));
  r.require(c.initial() == std::vector<StateId>{0}, "state 0 must be the only initial state");
  r.require(c.accepting_states() == std::vector<StateId>{0}, "state 0 must be the only accepting state");
  std::set<Property> loops;
  for (const auto& e : c.out(0))
    if (e.target == 0) {
      const auto& l = c.letter(e.letter);
      r.require(l.first == l.second, "self-loop on a non-diagonal letter " + l.str());
      loops.insert(l.first);
    }
  r.require(loops == std::set<Property>{"a", "b", "c"}, "expected diagonal self-loops on a, b, c");
  std::set<StateId> gadgets;
  for (auto [s, t] : {std::pair<Property, Property>{"b", "c"}, {"c", "b"}}) {
    const auto idx = c.letter_index(Letter::pair(s, t));
    if (!idx) {
      r.require(false, "missing letter (" + s + "," + t + ")");
      continue;
    }
    const auto into = c.out(0, *idx);
    r.require(into.size() == 1 && into[0].target != 0, "(" + s + "," + t + ") must enter one gadget state");
    if (into.size() != 1) continue;
    const StateId q = into[0].target;
    gadgets.insert(q);
    const auto back = c.out(q);
    r.require(back.size() == 1 && c.letter(back[0].letter) == Letter::pair(t, s) && back[0].target == 0,
              "gadget state must return on (" + t + "," + s + ")");
  }
  r.require(gadgets.size() == 2, "the two swaps need distinct gadget states");
  r.require(c.num_transitions() == 7, "expected 7 transitions, got " + std::to_string(c.num_transitions()));
  if (r.ok) r.detail = "3 states, 3 diagonal loops, 2 swap gadgets";
  return r;
}

// 2. Case study end to end.
Result case_study() {
  Result r;
  const auto m = load_model(model_path("rule.json"));
  const auto f = parse_ltl(m.spec, m.alphabet);
  const auto closure = is_trace_closed(reduce(ltl_to_buchi(f, m.alphabet)), reduce(ltl_to_buchi_negated(f, m.alphabet)),
                                       m.distribution);
  r.require(closure.closed, "specification reported not trace-closed");
  const auto s = synthesize(f, m.distribution, m.agents);
  r.require(s.verdict == Verdict::Success, "synthesis verdict " + to_string(s.verdict));
  if (s.verdict != Verdict::Success) return r;
  const auto& v = s.verification;
  r.require(v.trajectories_valid, "invalid trajectories");
  r.require(v.nonempty, "team language empty");
  r.require(v.included, "team language not included in the specification");
  r.require(s.stats.product_states <= s.stats.product_bound, "product exceeds the bound");
  r.require(eval_on_lasso(f, s.word), "synthesized word violates the specification");
  std::ostringstream os;
  os << "closed; product " << s.stats.product_states << " <= " << s.stats.product_bound << "; team "
     << v.team_states << " states; verified";
  if (r.ok) r.detail = os.str();
  return r;
}

// 3. Reference strategies for the case study.
Result reference_strategies() {
  Result r;
  const auto m = load_model(model_path("rule.json"));
  const auto f = parse_ltl(m.spec, m.alphabet);
  const auto doc = load_strategies(model_path("rule_reference_strategies.json"));
  const auto v = verify_strategies(doc.strategies, f, m.distribution, m.agents);
  r.require(v.trajectories_valid, "invalid trajectories");
  r.require(v.nonempty, "team language empty");
  r.require(v.included, "team language not included");
  for (const auto& s : doc.strategies) {
    const auto w = strategy_word(s, system_of(m.agents, s.agent));
    if (s.agent == "3") {
      r.require(w.is_finite(), "agent 3 must be finite");
    } else {
      r.require(!w.is_finite(), "agent " + s.agent + " must be lasso-shaped");
      for (const auto& l : w.period) r.require(l == Letter::single("H2"), "agent " + s.agent + " must repeat H2");
    }
  }
  if (r.ok) r.detail = "nonempty, included, agent 3 finite, agents 1-2 end in H2^w";
  return r;
}

Result trace_identity() {
  const auto t = props::trace_classes({Distribution({{"1", {"a", "b"}}, {"2", {"a", "c"}}}),
                                       Distribution({{"1", {"a"}}, {"2", {"b"}}, {"3", {"c"}}}),
                                       Distribution({{"1", {"a", "b"}}, {"2", {"b", "c"}}})},
                                      6);
  return from(t, "words up to length 6");
}

Result non_closure() {
  Result r;
  const Distribution d({{"1", {"a", "pad"}}, {"2", {"b", "pad"}}});
  const auto f = parse_ltl("a & X b", d.global());
  const auto b = ltl_to_buchi(f, d.global());
  const auto n = ltl_to_buchi_negated(f, d.global());
  const auto v = is_trace_closed(b, n, d);
  r.require(!v.closed, "reported closed");
  r.require(v.witness.has_value(), "no witness");
  if (!r.ok) return r;
  const auto& [w1, w2] = *v.witness;
  r.require(oracle::accepts(b, w1) && eval_on_lasso(f, w1), "first witness word not in the language");
  r.require(!oracle::accepts(b, w2) && !eval_on_lasso(f, w2), "second witness word in the language");
  r.require(trace_equivalent(w1, w2, d), "witness words not equivalent");
  bool same_projections = true;
  for (const auto& id : d.agents())
    same_projections = same_projections && same_word(project(w1, d.alphabet(id)), project(w2, d.alphabet(id)));
  r.require(same_projections, "witness projections differ");
  if (r.ok) r.detail = "NotClosed: " + to_string(w1) + " vs " + to_string(w2);
  return r;
}

// 10. Simulation on the case study and on the deadlock fixture.
Result simulation() {
  Result r;
  const auto m = load_model(model_path("rule.json"));
  const auto s = synthesize(parse_ltl(m.spec, m.alphabet), m.distribution, m.agents);
  r.require(s.verdict == Verdict::Success, "synthesis failed");
  if (!r.ok) return r;
  std::size_t deadlocks = 0, consistent = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto t = run_simulation(s.strategies, m.agents, m.distribution, seed, 500);
    deadlocks += t.outcome == Outcome::Deadlock;
    consistent += check_prefix_consistency(t, s.strategies, m.agents, m.distribution);
  }
  r.require(deadlocks == 0, std::to_string(deadlocks) + " deadlocks");
  r.require(consistent == 100, std::to_string(consistent) + "/100 consistent");
  const auto dm = load_model(model_path("deadlock.json"));
  const auto ds = load_strategies(model_path("deadlock_strategies.json"));
  const auto t = run_simulation(ds.strategies, dm.agents, dm.distribution, 0, 100);
  r.require(t.outcome == Outcome::Deadlock, "deadlock fixture ended with " + to_string(t.outcome));
  r.require(t.waits == std::vector<WaitEdge>{{"1", "2", "h"}}, "wrong waiting edges on the deadlock fixture");
  if (r.ok) r.detail = "0 deadlocks, 100/100 consistent; fixture: agent 1 waits on 2 at h";
  return r;
}

struct Criterion {
  int number;
  std::string name;
  double budget_s;  // 0 for none
  std::function<Result()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "commutation automaton structure", 1.0, commutation_structure},
      {2, "case study end to end", 300.0, case_study},
      {3, "reference case-study strategies", 0, reference_strategies},
      {4, "projection soundness and completeness", 0,
       [] { return from(props::projection(1004, 200, 6, 4, 3), "200 automata"); }},
      {5, "local product membership", 0, [] { return from(props::local_product(1005, 100, 5, 5), "100 pairs"); }},
      {6, "synchronous product membership", 0,
       [] {
         return merge(merge(from(props::sync_product(1006, 60, 2, true), "exhaustive |S|=2"),
                            from(props::sync_product(1016, 60, 3, true), "exhaustive |S|=3")),
                      from(props::sync_product(1026, 50, 5, false, 12), "sampled |S|=5"));
       }},
      {7, "trace classes equal products of projections", 0, trace_identity},
      {8, "non-closure of a & X b", 0, non_closure},
      {9, "translation against the evaluator", 60.0,
       [] {
         return merge(from(props::translation(1009, 1000, 2), "1000 formulas"),
                      from(props::disjointness(1019, 100), "100 disjointness"));
       }},
      {10, "simulation soundness", 30.0, simulation},
  };
  constexpr std::size_t memory_budget_kb = 4ull * 1024 * 1024;
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs > c.budget_s) r.require(false, "over the time budget");
    std::ostringstream extra;
    extra << std::fixed << std::setprecision(2) << secs << " s";
    if (c.number == 2) {
      const auto rss = peak_rss_kb();
      if (rss > memory_budget_kb) r.require(false, "over the memory budget");
      extra << ", peak RSS " << rss / 1024 << " MB";
    }
    all = all && r.ok;
    std::cout << (r.ok ? "PASS" : "FAIL") << " criterion " << std::setw(2) << c.number << ": " << c.name << " ["
              << extra.str() << (c.budget_s > 0 ? ", budget " + std::to_string(static_cast<int>(c.budget_s)) + " s" : "")
              << "] " << r.detail << std::endl;
  }
  return all ? 0 : 1;
}
