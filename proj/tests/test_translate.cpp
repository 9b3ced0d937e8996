#include <random>

#include "ccsynth/formula.hpp"
#include "ccsynth/translate.hpp"
#include "doctest.h"
#include "gen.hpp"
#include "props.hpp"

using namespace ccsynth;

TEST_CASE("translate: eventually") {
  auto b = ltl_to_buchi(Formula::eventually(Formula::atom("a")), {"a", "b"});
  CHECK(accepts(b, make_word({"b", "b", "a"}, {"b"})));
  CHECK_FALSE(accepts(b, make_word({}, {"b"})));
}

TEST_CASE("translate: infinitely often") {
  const PropertySet s = {"H2", "varpi_1"};
  auto f = parse_ltl("[]<> H2", s);
  auto b = ltl_to_buchi(f, s);
  CHECK(accepts(b, make_word({}, {"H2", "varpi_1"})));
  CHECK_FALSE(accepts(b, make_word({"H2"}, {"varpi_1"})));
  auto n = ltl_to_buchi_negated(f, s);
  CHECK(accepts(n, make_word({"H2"}, {"varpi_1"})));
}

TEST_CASE("translate: negation of eventually") {
  auto n = ltl_to_buchi_negated(Formula::eventually(Formula::atom("a")), {"a", "b"});
  CHECK(accepts(n, make_word({}, {"b"})));
  CHECK_FALSE(accepts(n, make_word({"a"}, {"b"})));
}

TEST_CASE("translate: constants and one-hot contradictions") {
  const PropertySet s = {"a", "b"};
  CHECK(is_empty(ltl_to_buchi(Formula::falsity(), s)));
  CHECK(is_empty(ltl_to_buchi(parse_ltl("F (a & b)", s), s)));
  CHECK_FALSE(is_empty(ltl_to_buchi(Formula::truth(), s)));
  CHECK(accepts(ltl_to_buchi(parse_ltl("G !a", s), s), make_word({}, {"b"})));
}

TEST_CASE("translate: unknown atom is rejected") {
  CHECK_THROWS_AS(ltl_to_buchi(Formula::atom("z"), {"a"}), std::invalid_argument);
}

TEST_CASE("translate: agrees with the evaluator on random samples") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 1000; ++i) {
    const auto atoms = gen::names(1 + gen::pick(rng, 3));
    const PropertySet sigma(atoms.begin(), atoms.end());
    auto f = gen::formula(rng, atoms, 4);
    auto b = ltl_to_buchi(f, sigma);
    auto n = ltl_to_buchi_negated(f, sigma);
    for (int k = 0; k < 3; ++k) {
      auto w = gen::lasso(rng, atoms, 4, 4);
      const bool truth = eval_on_lasso(f, w);
      CHECK_MESSAGE(accepts(b, w) == truth, f.str() << " on " << to_string(w));
      CHECK_MESSAGE(accepts(n, w) == !truth, f.str() << " on " << to_string(w));
    }
  }
}

TEST_CASE("translate: formula and its negation have disjoint languages") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    const auto atoms = gen::names(1 + gen::pick(rng, 3));
    const PropertySet sigma(atoms.begin(), atoms.end());
    auto f = gen::formula(rng, atoms, 4);
    CHECK(is_empty(intersect(std::vector<BuchiAutomaton>{ltl_to_buchi(f, sigma), ltl_to_buchi_negated(f, sigma)})));
  }
}

TEST_CASE("translate: exactly one of the pair accepts every small lasso") {
  const auto atoms = gen::names(2);
  const PropertySet sigma(atoms.begin(), atoms.end());
  const auto words = gen::all_lassos(atoms, 2, 2);
  for (const char* text : {"a U b", "G (a -> X b)", "F G a", "X X !a", "(a U b) | G a"}) {
    auto f = parse_ltl(text, sigma);
    auto b = ltl_to_buchi(f, sigma);
    auto n = ltl_to_buchi_negated(f, sigma);
    for (const auto& w : words) CHECK(accepts(b, w) != accepts(n, w));
  }
}

TEST_CASE("translate: construction is deterministic") {
  const PropertySet s = {"a", "b", "c"};
  auto f = parse_ltl("G F a & (b U c) & G (a -> X !a)", s);
  CHECK(export_dot(ltl_to_buchi(f, s)) == export_dot(ltl_to_buchi(f, s)));
}

TEST_CASE("translate: the independent acceptance oracle agrees with the evaluator") {
  const auto t = props::translation(31, 150, 4);
  CHECK_MESSAGE(t.ok(), t.first_failure);
  const auto d = props::disjointness(37, 30);
  CHECK_MESSAGE(d.ok(), d.first_failure);
}
