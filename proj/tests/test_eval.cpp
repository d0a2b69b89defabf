#include "sld/eval.hpp"

#include "sld/nash.hpp"
#include "testutil.hpp"

#include <doctest.h>

using sld::Assignment;
using sld::Cgs;
using sld::DiscountFn;
using sld::EvalOptions;
using sld::FormulaPtr;
using sld::LassoPlay;
using sld::ModelFile;
using sld::Rational;
using sld::Strategy;

namespace {

struct Secretary {
  ModelFile m = sld::gen_secretary();
  std::map<std::string, DiscountFn> env = m.discount_env();
  FormulaPtr psi_ann =
      sld::parse_formula("F hired_b | F[dAnn] onehired", env, m.cgs.agents);
  FormulaPtr psi_bob = sld::parse_formula("F[dBob] onehired", env, m.cgs.agents);

  Assignment assign(int ann_from, int bob_from) const {
    return {{"Ann", sld::secretary_sigma(m.cgs, ann_from)},
            {"Bob", sld::secretary_sigma(m.cgs, bob_from)}};
  }
};

LassoPlay shape(std::vector<int> positions, size_t loop_start) {
  LassoPlay p;
  p.positions = std::move(positions);
  p.loop_start = loop_start;
  p.loop_end = p.positions.size() - 1;
  return p;
}

}  // namespace

TEST_CASE("secretary goal values reproduce the published grid") {
  Secretary s;
  // (sigma_Ann, sigma_Bob) -> (psi_Ann, psi_Bob), all nine combinations
  const Rational half(1, 2), quarter(1, 4), eighth(1, 8), one(1);
  struct Row { int ann, bob; Rational va, vb; };
  const Row rows[] = {
      {0, 0, half, half},      {0, 1, one, quarter},   {0, 2, quarter, eighth},
      {1, 0, one, quarter},    {1, 1, one, quarter},   {1, 2, quarter, eighth},
      {2, 0, quarter, eighth}, {2, 1, quarter, eighth}, {2, 2, quarter, eighth},
  };
  for (const Row& r : rows) {
    Assignment chi = s.assign(r.ann, r.bob);
    CHECK(sld::eval(s.m.cgs, chi, s.m.cgs.initial, s.psi_ann) == r.va);
    CHECK(sld::eval(s.m.cgs, chi, s.m.cgs.initial, s.psi_bob) == r.vb);
  }
}

TEST_CASE("until scan base cases") {
  LassoPlay p = shape({0, 1, 2, 1}, 1);
  auto table = [&](std::vector<Rational> per_pos) {
    return [per_pos, &p](size_t i) { return per_pos[static_cast<size_t>(p.at(i))]; };
  };
  // immediate rhs hit wins regardless of lhs
  CHECK(sld::eval_until(p, table({Rational(0), Rational(0), Rational(0)}),
                        table({Rational(1), Rational(0), Rational(0)})) == Rational(1));
  // rhs only on a cycle position, lhs constantly 1
  CHECK(sld::eval_until(p, table({Rational(1), Rational(1), Rational(1)}),
                        table({Rational(0), Rational(0), Rational(1)})) == Rational(1));
}

TEST_CASE("discounted until scan examples") {
  // play q0 q2^w with the goal labeled from index 1, lambda = 1/2
  LassoPlay p = shape({0, 1, 1}, 1);
  DiscountFn d = DiscountFn::exponential(Rational(1, 2));
  auto v_goal = [](size_t i) { return i >= 1 ? Rational(1) : Rational(0); };
  auto v_one = [](size_t) { return Rational(1); };
  CHECK(sld::eval_until_discounted(p, d, v_one, v_goal) == Rational(1, 2));
  // first candidate already maximal
  auto v_now = [](size_t i) { return i == 0 ? Rational(1) : Rational(0); };
  CHECK(sld::eval_until_discounted(p, d, v_one, v_now) == Rational(1));
}

TEST_CASE("bounded scans agree with the brute-force oracle") {
  sldtest::Rng rng(31);
  for (int t = 0; t < 500; ++t) {
    int n_pos = 1 + rng.below(5);
    std::vector<int> seq;
    int len = 1 + rng.below(6);
    for (int i = 0; i < len; ++i)
      seq.push_back(rng.below(n_pos));
    size_t loop_start = static_cast<size_t>(rng.below(len));
    seq.push_back(seq[loop_start]);  // junction
    LassoPlay p = shape(seq, loop_start);

    std::vector<Rational> t1, t2;
    for (int i = 0; i < n_pos; ++i) {
      t1.push_back(rng.unit_rational());
      t2.push_back(rng.unit_rational());
    }
    auto v1 = [&](size_t i) { return t1[static_cast<size_t>(p.at(i))]; };
    auto v2 = [&](size_t i) { return t2[static_cast<size_t>(p.at(i))]; };

    size_t cycle = p.cycle_length();
    CHECK(sld::eval_until(p, v1, v2) ==
          sldtest::brute_until(p.loop_end + 3 * cycle, v1, v2));

    DiscountFn d = sldtest::random_discount(rng, false);
    CHECK(sld::eval_until_discounted(p, d, v1, v2) ==
          sldtest::brute_until_discounted(p.loop_end, cycle, d, v1, v2));
  }
}

TEST_CASE("undiscounted until equals the constant-one discounted oracle") {
  sldtest::Rng rng(37);
  for (int t = 0; t < 200; ++t) {
    int n_pos = 1 + rng.below(4);
    std::vector<int> seq;
    int len = 1 + rng.below(5);
    for (int i = 0; i < len; ++i)
      seq.push_back(rng.below(n_pos));
    size_t loop_start = static_cast<size_t>(rng.below(len));
    seq.push_back(seq[loop_start]);
    LassoPlay p = shape(seq, loop_start);
    std::vector<Rational> t1, t2;
    for (int i = 0; i < n_pos; ++i) {
      t1.push_back(rng.unit_rational());
      t2.push_back(rng.unit_rational());
    }
    auto v1 = [&](size_t i) { return t1[static_cast<size_t>(p.at(i))]; };
    auto v2 = [&](size_t i) { return t2[static_cast<size_t>(p.at(i))]; };
    // constant-1 weights make the discounted candidates coincide with the
    // Boolean-until candidates on any common horizon
    size_t horizon = p.loop_end + 3 * p.cycle_length();
    auto one = [](size_t) { return Rational::one(); };
    Rational brute_disc = Rational(0);
    for (size_t i = 0; i <= horizon; ++i)
      brute_disc = sld::max(brute_disc, sldtest::until_candidate(i, v1, v2, one));
    CHECK(sld::eval_until(p, v1, v2) == brute_disc);
  }
}

TEST_CASE("negation involution and De Morgan minimum") {
  sldtest::Rng rng(41);
  for (int t = 0; t < 60; ++t) {
    Cgs g = sldtest::random_cgs(rng);
    Assignment chi = sldtest::random_agent_assignment(rng, g);
    FormulaPtr a = sldtest::random_ltld(rng, 3, false);
    FormulaPtr b = sldtest::random_ltld(rng, 2, false);
    int q = rng.below(static_cast<int>(g.positions.size()));
    Rational va = sld::eval(g, chi, q, a);
    CHECK(sld::eval(g, chi, q, sld::f_not(sld::f_not(a))) == va);
    Rational vb = sld::eval(g, chi, q, b);
    CHECK(sld::eval(g, chi, q, sld::f_and(a, b)) == sld::min(va, vb));
  }
}

TEST_CASE("universal quantification is the minimum over strategies") {
  sldtest::Rng rng(43);
  for (int t = 0; t < 25; ++t) {
    Cgs g = sldtest::random_cgs(rng, 3, 2, 2);
    FormulaPtr body = sldtest::random_ltld(rng, 2, false);
    // close the body for every agent except through the quantified var
    FormulaPtr bound = body;
    std::vector<std::string> vars;
    for (size_t i = 0; i < g.agents.size(); ++i)
      vars.push_back("v" + std::to_string(i));
    for (size_t i = g.agents.size(); i-- > 0;)
      bound = sld::f_bind(g.agents[i], vars[i], bound);
    Assignment chi;
    for (size_t i = 1; i < vars.size(); ++i)
      chi[vars[i]] = sldtest::random_strategy(rng, g);

    FormulaPtr universal = sld::f_forall(vars[0], bound);
    Rational via_eval = sld::eval(g, chi, g.initial, universal);

    // explicit minimum over every memoryless strategy
    sld::Evaluator ev(g);
    Rational lo = Rational::one();
    std::vector<int> all;
    for (size_t p = 0; p < g.positions.size(); ++p)
      all.push_back(static_cast<int>(p));
    Assignment inner = chi;
    ev.enumerate_strategies(all, [&](const Strategy& s) {
      inner[vars[0]] = s;
      lo = sld::min(lo, sld::eval(g, inner, g.initial, bound));
    });
    CHECK(via_eval == lo);
  }
}

TEST_CASE("restricted and full quantifier enumeration agree") {
  sldtest::Rng rng(47);
  for (int t = 0; t < 30; ++t) {
    Cgs g = sldtest::random_cgs(rng, 3, 2, 2);
    FormulaPtr sentence = sldtest::random_sentence(rng, g, 2);
    EvalOptions fast, full;
    full.full_enumeration = true;
    CHECK(sld::eval(g, {}, g.initial, sentence, fast) ==
          sld::eval(g, {}, g.initial, sentence, full));
  }
}

TEST_CASE("memoized and uncached evaluation agree") {
  sldtest::Rng rng(53);
  for (int t = 0; t < 40; ++t) {
    Cgs g = sldtest::random_cgs(rng);
    Assignment chi = sldtest::random_agent_assignment(rng, g);
    FormulaPtr f = sldtest::random_ltld(rng, 3, false);
    EvalOptions cached, raw;
    raw.memoize = false;
    CHECK(sld::eval(g, chi, g.initial, f, cached) == sld::eval(g, chi, g.initial, f, raw));
  }
}

TEST_CASE("discounted until is monotone in its inputs") {
  sldtest::Rng rng(59);
  for (int t = 0; t < 120; ++t) {
    int n_pos = 1 + rng.below(4);
    std::vector<int> seq;
    int len = 1 + rng.below(5);
    for (int i = 0; i < len; ++i)
      seq.push_back(rng.below(n_pos));
    size_t loop_start = static_cast<size_t>(rng.below(len));
    seq.push_back(seq[loop_start]);
    LassoPlay p = shape(seq, loop_start);
    std::vector<Rational> t1, t2;
    for (int i = 0; i < n_pos; ++i) {
      t1.push_back(rng.unit_rational());
      t2.push_back(rng.unit_rational());
    }
    auto v1 = [&](size_t i) { return t1[static_cast<size_t>(p.at(i))]; };
    auto v2 = [&](size_t i) { return t2[static_cast<size_t>(p.at(i))]; };
    DiscountFn d = DiscountFn::exponential(Rational(1, 2));
    Rational base = sld::eval_until_discounted(p, d, v1, v2);

    // bump one table entry upward
    std::vector<Rational>& tab = rng.coin() ? t1 : t2;
    int slot = rng.below(n_pos);
    Rational saved = tab[static_cast<size_t>(slot)];
    tab[static_cast<size_t>(slot)] = sld::min(Rational(1), saved + rng.unit_rational());
    CHECK(sld::eval_until_discounted(p, d, v1, v2) >= base);
    tab[static_cast<size_t>(slot)] = saved;

    // pointwise-larger discounting cannot lower the value
    DiscountFn larger = DiscountFn::exponential(Rational(2, 3));
    CHECK(sld::eval_until_discounted(p, larger, v1, v2) >= base);
    DiscountFn smaller = DiscountFn::scaled(Rational(1, 2), d);
    CHECK(sld::eval_until_discounted(p, smaller, v1, v2) <= base);
  }
}

TEST_CASE("a stuttered prefix shifts discounted eventualities but not Boolean ones") {
  // chain s0 -> s1 -> s2 with p only at s2; the play from s0 is the play
  // from s1 with one extra unlabeled step
  Cgs g;
  g.agents = {"a"};
  g.actions = {"act"};
  g.positions = {"s0", "s1", "s2"};
  g.initial = 0;
  g.labels = {{}, {}, {"p"}};
  g.transition = {1, 2, 2};
  Assignment chi{{"a", Strategy{{0, 0, 0}}}};
  DiscountFn d = DiscountFn::exponential(Rational(1, 2));
  FormulaPtr fd = sld::f_eventually_d(d, "d", sld::f_atom("p"));
  FormulaPtr fb = sld::f_eventually(sld::f_atom("p"));
  Rational from_s1 = sld::eval(g, chi, 1, fd);
  Rational from_s0 = sld::eval(g, chi, 0, fd);
  CHECK(from_s1 == Rational(1, 2));
  CHECK(from_s0 == Rational(1, 4));
  CHECK(from_s0 != from_s1);
  CHECK(sld::eval(g, chi, 0, fb) == sld::eval(g, chi, 1, fb));
}

TEST_CASE("threshold checking compares exactly and rejects non-sentences") {
  Secretary s;
  auto [ok, report] = sld::check_threshold(s.m.cgs, sld::f_true(), Rational(1),
                                           sld::ThresholdCmp::GreaterEqual);
  CHECK(ok);
  CHECK(report.value == Rational(1));
  auto [gt, report2] =
      sld::check_threshold(s.m.cgs, sld::f_true(), Rational(1), sld::ThresholdCmp::Greater);
  CHECK(!gt);
  CHECK(report2.verdict.has_value());
  CHECK_THROWS_AS(
      sld::check_threshold(s.m.cgs, s.psi_bob, Rational(1, 2), sld::ThresholdCmp::Greater),
      std::invalid_argument);
}

TEST_CASE("evaluation requires the free names to be bound") {
  Secretary s;
  Assignment chi;  // nothing bound
  CHECK_THROWS_AS(sld::eval(s.m.cgs, chi, s.m.cgs.initial, s.psi_bob),
                  std::invalid_argument);
  // binding a variable that was never assigned is an error too
  FormulaPtr bound = sld::f_bind("Ann", "ghost", s.psi_bob);
  Assignment agents_only = s.assign(0, 0);
  CHECK_THROWS_AS(sld::eval(s.m.cgs, agents_only, s.m.cgs.initial, bound),
                  std::invalid_argument);
}
