#include "sld/apt.hpp"

#include "sld/eval.hpp"
#include "sld/nash.hpp"
#include "sld/textio.hpp"
#include "testutil.hpp"

#include <doctest.h>

using sld::Apt;
using sld::Assignment;
using sld::Cgs;
using sld::DiscountFn;
using sld::Formula;
using sld::FormulaPtr;
using sld::ModelFile;
using sld::Rational;
using sld::Strategy;
using sld::TransNode;

namespace {

Cgs two_state_game() {
  Cgs g;
  g.agents = {"a"};
  g.actions = {"go", "stay"};
  g.positions = {"s0", "s1"};
  g.initial = 0;
  g.labels = {{}, {"p"}};
  g.transition.assign(4, -1);
  g.set_target(0, 0, 1);  // go
  g.set_target(0, 1, 0);  // stay
  g.set_target(1, 0, 1);
  g.set_target(1, 1, 1);
  return g;
}

FormulaPtr f_disc(const Rational& lambda, const char* prop) {
  return sld::f_eventually_d(DiscountFn::exponential(lambda), "d", sld::f_atom(prop));
}

}  // namespace

TEST_CASE("shift chain collapses at the threshold crossing") {
  Cgs g = two_state_game();
  // 1/8 / (1/2)^3 = 1: shifts 0..2 exist, the next one collapses to false
  Apt a = sld::build_apt(f_disc(Rational(1, 2), "p"), Rational(1, 8), g);
  CHECK(a.states.size() == 3);
  for (const auto& st : a.states) {
    CHECK(!st.type2);
    CHECK(st.threshold == Rational(1, 8));
    CHECK(st.threshold.in_unit_interval());
  }
}

TEST_CASE("atomic and degenerate thresholds") {
  Cgs g = two_state_game();
  // (p > 0) moves to true exactly on letters whose position carries p
  Apt a = sld::build_apt(sld::f_atom("p"), Rational(0), g);
  REQUIRE(a.states.size() == 1);
  for (size_t code = 0; code < a.val_count(); ++code) {
    CHECK(a.transitions[0][a.letter_code(code, 0)]->kind == TransNode::Kind::False);
    CHECK(a.transitions[0][a.letter_code(code, 1)]->kind == TransNode::Kind::True);
  }
  // (p U q > 1) is immediately false
  Apt b = sld::build_apt(sld::f_until(sld::f_atom("p"), sld::f_atom("q")), Rational(1), g);
  for (size_t letter = 0; letter < b.letter_count(); ++letter)
    CHECK(b.transitions[static_cast<size_t>(b.initial)][letter]->kind ==
          TransNode::Kind::False);
  CHECK(sld::reachable_state_count(f_disc(Rational(1, 2), "p"), Rational(1), g) == 1);
}

TEST_CASE("state counts grow affinely with the threshold exponent") {
  Cgs g = two_state_game();
  std::vector<size_t> counts;
  Rational theta(1, 2);
  for (int m = 1; m <= 8; ++m) {
    counts.push_back(sld::reachable_state_count(f_disc(Rational(1, 2), "p"), theta, g));
    theta = theta * Rational(1, 2);
  }
  for (size_t i = 0; i + 1 < counts.size(); ++i)
    CHECK(counts[i] <= counts[i + 1]);
  // exact affine growth: constant unit difference after the first point
  for (size_t i = 1; i + 1 < counts.size(); ++i)
    CHECK(counts[i + 1] - counts[i] == counts[1] - counts[0]);
  // one extra shift level between 1/8 and 1/16
  CHECK(counts[3] - counts[2] == 1);
}

TEST_CASE("unsupported inputs are rejected") {
  Cgs g = two_state_game();
  CHECK_THROWS_AS(sld::build_apt(sld::f_exists("x", sld::f_atom("p")), Rational(1, 2), g),
                  std::invalid_argument);
  FormulaPtr hyp = sld::f_eventually_d(DiscountFn::hyperbolic(), "h", sld::f_atom("p"));
  CHECK_THROWS_AS(sld::build_apt(hyp, Rational(1, 2), g), std::invalid_argument);
  // scaled exponential is inside the supported family
  FormulaPtr scaled = sld::f_eventually_d(
      DiscountFn::scaled(Rational(1, 2), DiscountFn::exponential(Rational(1, 2))), "s",
      sld::f_atom("p"));
  CHECK(sld::build_apt(scaled, Rational(1, 4), g).states.size() >= 1);
}

TEST_CASE("membership on the secretary game") {
  ModelFile m = sld::gen_secretary();
  FormulaPtr goal = sld::parse_formula("F[dBob] onehired", m.discount_env(), m.cgs.agents);
  Assignment chi{{"Ann", sld::secretary_sigma(m.cgs, 0)},
                 {"Bob", sld::secretary_sigma(m.cgs, 0)}};
  Apt low = sld::build_apt(goal, Rational(1, 5), m.cgs);
  CHECK(sld::apt_membership(low, m.cgs, chi, m.cgs.initial));
  Apt high = sld::build_apt(goal, Rational(3, 5), m.cgs);
  CHECK(!sld::apt_membership(high, m.cgs, chi, m.cgs.initial));
  // the trivial automaton accepts everything
  Apt triv = sld::build_apt(sld::f_true(), Rational(0), m.cgs);
  CHECK(sld::apt_membership(triv, m.cgs, chi, m.cgs.initial));
  // unbound names are reported
  Assignment partial{{"Ann", sld::secretary_sigma(m.cgs, 0)}};
  CHECK_THROWS_AS(sld::apt_membership(low, m.cgs, partial, m.cgs.initial),
                  std::invalid_argument);
}

TEST_CASE("membership agrees with direct evaluation") {
  sldtest::Rng rng(83);
  int runs = 0;
  for (int t = 0; t < 200; ++t) {
    Cgs g = sldtest::random_cgs(rng, 4, 3, 2);
    FormulaPtr f = sldtest::random_ltld(rng, 1 + rng.below(3), true);
    Rational theta(rng.below(17), 16);
    Assignment chi = sldtest::random_agent_assignment(rng, g);
    int q = rng.below(static_cast<int>(g.positions.size()));
    Apt a = sld::build_apt(f, theta, g);
    for (const auto& st : a.states)
      CHECK((st.type2 || st.threshold.in_unit_interval()));
    bool member = sld::apt_membership(a, g, chi, q);
    bool expected = sld::eval(g, chi, q, f) > theta;
    CHECK(member == expected);
    ++runs;
  }
  CHECK(runs == 200);
}

TEST_CASE("membership handles binding-prefixed formulas") {
  sldtest::Rng rng(87);
  for (int t = 0; t < 60; ++t) {
    Cgs g = sldtest::random_cgs(rng, 4, 2, 2);
    FormulaPtr body = sldtest::random_ltld(rng, 2, true);
    // route every agent through a strategy variable
    FormulaPtr f = body;
    Assignment chi;
    for (size_t i = g.agents.size(); i-- > 0;) {
      std::string var = "v" + std::to_string(i);
      f = sld::f_bind(g.agents[i], var, f);
      chi[var] = sldtest::random_strategy(rng, g);
    }
    for (const auto& agent : g.agents)
      chi[agent] = sldtest::random_strategy(rng, g);  // for the evaluator's outcomes
    Rational theta(rng.below(9), 8);
    int q = rng.below(static_cast<int>(g.positions.size()));
    Apt a = sld::build_apt(f, theta, g);
    CHECK(sld::apt_membership(a, g, chi, q) == (sld::eval(g, chi, q, f) > theta));
  }
}

TEST_CASE("dualization complements the language") {
  sldtest::Rng rng(89);
  for (int t = 0; t < 60; ++t) {
    Cgs g = sldtest::random_cgs(rng, 3, 2, 2);
    FormulaPtr f = sldtest::random_ltld(rng, 2, true);
    Rational theta(rng.below(9), 8);
    Apt a = sld::build_apt(f, theta, g);
    Apt d = sld::dualize(a);
    Apt dd = sld::dualize(d);
    Assignment chi = sldtest::random_agent_assignment(rng, g);
    int q = rng.below(static_cast<int>(g.positions.size()));
    bool original = sld::apt_membership(a, g, chi, q);
    CHECK(sld::apt_membership(d, g, chi, q) == !original);
    CHECK(sld::apt_membership(dd, g, chi, q) == original);
  }
}

TEST_CASE("dual of an atomic assertion matches the complemented assertion") {
  sldtest::Rng rng(97);
  Cgs g = two_state_game();
  // (p > 0) complemented should accept exactly when !p fails to exceed...
  Apt a = sld::build_apt(sld::f_atom("p"), Rational(0), g);
  Apt dual = sld::dualize(a);
  // (!p > 0) asserts value(p) < 1, i.e. p unsatisfied: same sets here
  Apt neg = sld::build_apt(sld::f_not(sld::f_atom("p")), Rational(0), g);
  for (int t = 0; t < 20; ++t) {
    Assignment chi = sldtest::random_agent_assignment(rng, g);
    int q = rng.below(2);
    CHECK(sld::apt_membership(dual, g, chi, q) == sld::apt_membership(neg, g, chi, q));
  }
}

TEST_CASE("accepting priorities sit on the open Boolean untils") {
  Cgs g = two_state_game();
  FormulaPtr f = sld::f_not(sld::f_until(sld::f_atom("p"), sld::f_atom("q")));
  Apt a = sld::build_apt(f, Rational(1, 2), g);
  bool saw_accepting = false;
  for (const auto& st : a.states) {
    if (st.priority == 2) {
      saw_accepting = true;
      CHECK(st.formula->kind == Formula::Kind::Until);
      CHECK(st.less);  // the < (or dualized) untils are the accepting ones
    }
  }
  CHECK(saw_accepting);
}

TEST_CASE("binding rewrites route actions through the right variables") {
  // one agent bound to x: under chi(x) = go-everywhere the play reaches p
  Cgs g = two_state_game();
  FormulaPtr f = sld::f_bind("a", "x", f_disc(Rational(1, 2), "p"));
  Apt a = sld::build_apt(f, Rational(1, 4), g);
  CHECK(a.val_names == std::vector<std::string>{"x"});
  Assignment go{{"x", Strategy{{0, 0}}}};
  Assignment stay{{"x", Strategy{{1, 1}}}};
  CHECK(sld::apt_membership(a, g, go, 0));
  CHECK(!sld::apt_membership(a, g, stay, 0));
}

TEST_CASE("boundary thresholds on negated untils") {
  // (!(p U q) > 0) expands through (p U q < 1): the strict comparison at
  // exactly 1 must follow the in-range rule, not the degenerate ones
  Cgs g = two_state_game();
  FormulaPtr f = sld::f_not(sld::f_until(sld::f_atom("p"), sld::f_atom("q")));
  Apt a = sld::build_apt(f, Rational(0), g);
  for (int t = 0; t < 8; ++t) {
    sldtest::Rng rng(200 + t);
    Assignment chi = sldtest::random_agent_assignment(rng, g);
    int q = t % 2;
    CHECK(sld::apt_membership(a, g, chi, q) == (sld::eval(g, chi, q, f) > Rational(0)));
  }

  // (F[exp 1/2] p < 1) enters with the ratio exactly 1
  FormulaPtr fd = sld::f_not(f_disc(Rational(1, 2), "p"));
  Apt b = sld::build_apt(fd, Rational(0), g);
  Strategy go{{0, 0}}, stay{{1, 1}};
  Assignment reach{{"a", go}};
  // from s1 the goal holds immediately: value 1, complement 0, reject
  CHECK(!sld::apt_membership(b, g, reach, 1));
  // from s0 the goal is discounted to 1/2: complement 1/2 > 0, accept
  CHECK(sld::apt_membership(b, g, reach, 0));
  Assignment idle{{"a", stay}};
  // never reaching p keeps the complement at 1
  CHECK(sld::apt_membership(b, g, idle, 0));
}

TEST_CASE("extended closure collects the published classes") {
  FormulaPtr p = sld::f_atom("p"), q = sld::f_atom("q");
  // F[exp 1/2] p: shifted untils appear up to the requested bound
  FormulaPtr fd = f_disc(Rational(1, 2), "p");
  auto xcl = sld::extended_closure(fd, 3);
  int shifted = 0;
  for (const auto& f : xcl)
    if (f->kind == Formula::Kind::UntilDisc && !(*f->discount == *fd->discount))
      ++shifted;
  CHECK(shifted == 3);

  auto xcl_atom = sld::extended_closure(p, 2);
  CHECK(xcl_atom.size() == 2);  // p itself plus notone's !p

  auto xcl_until = sld::extended_closure(sld::f_until(p, q), 2);
  bool has_p = false, has_q = false, has_until = false;
  for (const auto& f : xcl_until) {
    has_p = has_p || (f->kind == Formula::Kind::Atom && f->name == "p");
    has_q = has_q || (f->kind == Formula::Kind::Atom && f->name == "q");
    has_until = has_until || f->kind == Formula::Kind::Until;
  }
  CHECK(has_p);
  CHECK(has_q);
  CHECK(has_until);
}

TEST_CASE("the automaton dump is stable and complete") {
  Cgs g = two_state_game();
  Apt a = sld::build_apt(f_disc(Rational(1, 2), "p"), Rational(1, 4), g);
  std::string dump = a.dump();
  CHECK(dump.find("states: 2") != std::string::npos);
  CHECK(dump.find("initial: s0") != std::string::npos);
  CHECK(dump.find("priority") != std::string::npos);
  // every state/letter pair is listed
  size_t lines = 0;
  for (char c : dump)
    lines += c == '\n';
  CHECK(lines >= a.states.size() * a.letter_count());
}
