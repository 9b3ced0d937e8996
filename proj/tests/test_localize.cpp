#include <random>

#include "ccsynth/formula.hpp"
#include "ccsynth/localize.hpp"
#include "ccsynth/translate.hpp"
#include "doctest.h"
#include "gen.hpp"
#include "oracles.hpp"
#include "props.hpp"

using namespace ccsynth;

namespace {

TransitionSystem cycle_ab() {
  TransitionSystem ts("1", {"a", "b"});
  auto x = ts.add_state("x", "a");
  auto y = ts.add_state("y", "b");
  ts.set_initial(x);
  ts.add_transition(x, y);
  ts.add_transition(y, x);
  return ts;
}

// Accepts exactly b a^omega.
BuchiAutomaton b_then_a() {
  BuchiAutomaton b(single_letters({"a", "b"}));
  auto p = b.add_state("p");
  auto q = b.add_state("q");
  b.set_initial(p);
  b.set_accepting(q);
  b.add_transition(p, Letter::single("b"), q);
  b.add_transition(q, Letter::single("a"), q);
  return b;
}

}  // namespace

TEST_CASE("transition system: validation") {
  TransitionSystem ts("1", {"a"});
  ts.add_state("x", "a");
  CHECK_THROWS_AS(ts.add_state("x", "a"), std::invalid_argument);
  CHECK_THROWS_AS(ts.add_state("y", "b"), std::invalid_argument);
  CHECK_THROWS_AS(ts.add_transition(0, 3), std::out_of_range);
  CHECK(ts.state("x") == 0);
  CHECK_THROWS_AS(ts.state("nope"), std::out_of_range);
}

TEST_CASE("projection: a finite projection of an infinite word") {
  auto bi = project_spec(b_then_a(), {"b"});
  CHECK(bi.alphabet() == single_letters({"b"}));
  CHECK(accepts(bi, make_word({"b"})));
  CHECK_FALSE(accepts(bi, make_word({})));
  CHECK_FALSE(accepts(bi, make_word({"b", "b"})));
  CHECK_FALSE(accepts(bi, make_word({}, {"b"})));
  for (auto q : bi.finitary_states()) CHECK(bi.base().out(q).empty());
}

TEST_CASE("projection: full alphabet is the identity") {
  std::mt19937_64 rng(43);
  const auto atoms = gen::names(2);
  const PropertySet sigma(atoms.begin(), atoms.end());
  for (int i = 0; i < 50; ++i) {
    auto b = gen::automaton(rng, sigma, 5);
    auto bi = project_spec(b, sigma);
    CHECK(bi.finitary_states().empty());
    for (const auto& w : gen::all_lassos(atoms, 2, 2)) CHECK(accepts(bi, w) == oracle::accepts(b, w));
  }
}

TEST_CASE("projection: alternating word onto one letter") {
  const PropertySet s = {"a", "b"};
  auto b = ltl_to_buchi(parse_ltl("a & G (a -> X b) & G (b -> X a)", s), s);
  auto bi = project_spec(b, {"a"});
  CHECK(accepts(bi, make_word({}, {"a"})));
  CHECK_FALSE(accepts(bi, make_word({"a"})));
}

TEST_CASE("projection: accepting visits during silent moves are kept") {
  // p -x-> f -x-> p2 -a-> p2 loop, where only f is accepting and x is hidden:
  // the accepting state is seen only between visible letters.
  BuchiAutomaton b(single_letters({"a", "x"}));
  auto p = b.add_state("p");
  auto f = b.add_state("f");
  b.set_initial(p);
  b.set_accepting(f);
  b.add_transition(p, Letter::single("a"), p);
  b.add_transition(p, Letter::single("x"), f);
  b.add_transition(f, Letter::single("x"), p);
  auto bi = project_spec(b, {"a"});
  // (a x x)^omega is accepted, so a^omega must be.
  CHECK(accepts(bi, make_word({}, {"a"})));
}

TEST_CASE("projection: unknown letters are rejected") {
  CHECK_THROWS_AS(project_spec(b_then_a(), {"z"}), std::invalid_argument);
}

TEST_CASE("projection: both directions on random automata") {
  auto t = props::projection(47, 40);
  CHECK_MESSAGE(t.ok(), t.first_failure);
  CHECK(t.checks > 1000);
}

TEST_CASE("projection: projecting again onto the same alphabet changes nothing") {
  std::mt19937_64 rng(53);
  const auto atoms = gen::names(3);
  const PropertySet sigma(atoms.begin(), atoms.end());
  for (int i = 0; i < 30; ++i) {
    auto sigma_i = gen::subset(rng, sigma);
    auto bi = project_spec(gen::automaton(rng, sigma, 5), sigma_i);
    auto again = project_spec(bi.base(), sigma_i);
    const std::vector<Property> local(sigma_i.begin(), sigma_i.end());
    for (const auto& v : gen::all_lassos(local, 2, 2)) CHECK(accepts(again, v) == accepts(bi, v));
  }
}

TEST_CASE("start extension: shape") {
  TransitionSystem ts("1", {"a"});
  ts.add_state("x", "a");
  ts.add_transition(0, 0);
  auto e = extend_with_start(ts);
  CHECK(e.num_states() == 2);
  CHECK(e.num_transitions() == 2);
  CHECK(e.successors(ExtendedTransitionSystem::kStart) == std::vector<std::uint32_t>{1});
  CHECK(e.name(0) == "Start");
  CHECK(e.label(0) == ExtendedTransitionSystem::kStartLabel);
  CHECK_FALSE(ts.alphabet().contains(e.label(0)));
}

TEST_CASE("start extension: same trajectory labels and no way back to Start") {
  std::mt19937_64 rng(59);
  const auto sigma = gen::alphabet(2);
  for (int i = 0; i < 30; ++i) {
    auto ts = gen::transition_system(rng, "1", sigma, 4);
    auto e = extend_with_start(ts);
    for (std::uint32_t s = 0; s < e.num_states(); ++s)
      for (auto t : e.successors(s)) CHECK(t != ExtendedTransitionSystem::kStart);
    // label sequences of length <= 5 starting at the original initial state
    std::set<std::vector<Property>> plain, extended;
    std::function<void(std::uint32_t, std::vector<Property>, std::set<std::vector<Property>>&, bool)> walk =
        [&](std::uint32_t s, std::vector<Property> w, std::set<std::vector<Property>>& out, bool ext) {
          if (!ext || s != ExtendedTransitionSystem::kStart) w.push_back(ext ? e.label(s) : ts.label(s));
          if (!w.empty()) out.insert(w);
          if (w.size() == 5) return;
          for (auto t : ext ? e.successors(s) : ts.successors(s)) walk(t, w, out, ext);
        };
    walk(ts.initial(), {}, plain, false);
    walk(ExtendedTransitionSystem::kStart, {}, extended, true);
    CHECK(plain == extended);
  }
}

TEST_CASE("local product: single self-loop") {
  TransitionSystem ts("1", {"a"});
  ts.add_state("x", "a");
  ts.add_transition(0, 0);
  auto bi = MixedBuchiAutomaton(ltl_to_buchi(Formula::eventually(Formula::atom("a")), {"a"}));
  auto e = implementable_local(extend_with_start(ts), bi);
  CHECK(accepts(e.automaton, make_word({}, {"a"})));
  CHECK_FALSE(accepts(e.automaton, make_word({"a"})));
  REQUIRE(e.origin.size() == e.automaton.num_states());
}

TEST_CASE("local product: alternating system under infinitely-often") {
  const PropertySet s = {"a", "b"};
  auto bi = MixedBuchiAutomaton(ltl_to_buchi(parse_ltl("G F a", s), s));
  auto ts = cycle_ab();
  auto e = implementable_local(extend_with_start(ts), bi);
  auto w = find_accepted_lasso(e.automaton.base());
  REQUIRE(w);
  CHECK(same_word(*w, make_word({}, {"a", "b"})));
  CHECK(e.unpruned_states <= (ts.num_states() + 1) * bi.num_states());
}

TEST_CASE("local product: never finitary at Start") {
  TransitionSystem ts("1", {"a"});
  ts.add_state("x", "a");
  BuchiAutomaton b(single_letters({"a"}));
  b.add_state("f");
  b.set_initial(0);
  auto e = implementable_local(extend_with_start(ts), MixedBuchiAutomaton(b, {0}));
  CHECK_FALSE(accepts(e.automaton, make_word({})));
  CHECK(e.automaton.num_states() == 0);
}

TEST_CASE("local product: alphabet mismatch") {
  auto bi = MixedBuchiAutomaton(ltl_to_buchi(Formula::atom("a"), {"a"}));
  CHECK_THROWS_AS(implementable_local(extend_with_start(cycle_ab()), bi), std::invalid_argument);
}

TEST_CASE("local product: membership equals specification and trajectory on random pairs") {
  auto t = props::local_product(61, 30);
  CHECK_MESSAGE(t.ok(), t.first_failure);
  CHECK(t.checks > 1000);
}
