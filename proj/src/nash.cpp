#include "sld/nash.hpp"

#include <algorithm>
#include <stdexcept>

namespace sld {

namespace {

void check_goals(const Cgs& g, const GoalProfile& goals) {
  for (const auto& agent : g.agents) {
    auto it = goals.goals.find(agent);
    if (it == goals.goals.end())
      throw std::invalid_argument("goals: missing goal for agent '" + agent + "'");
    if (!is_ltld(it->second))
      throw std::invalid_argument("goals: goal for '" + agent +
                                  "' must be quantifier- and binding-free");
  }
}

}  // namespace

FormulaPtr ne_formula(const Cgs& g, const GoalProfile& goals,
                      const std::vector<std::string>& profile_vars) {
  check_goals(g, goals);
  if (profile_vars.size() != g.agents.size())
    throw std::invalid_argument("ne_formula: need one profile variable per agent");

  // /\_a ((A b . (a,b) psi_a) -> psi_a)
  FormulaPtr conj;
  for (const auto& agent : g.agents) {
    const FormulaPtr& goal = goals.goals.at(agent);
    FormulaPtr best_defense = f_forall("b", f_bind(agent, "b", goal));
    FormulaPtr clause = f_implies(best_defense, goal);
    conj = conj ? f_and(std::move(conj), std::move(clause)) : std::move(clause);
  }
  // (Ag, vars) prefix, innermost agent last
  FormulaPtr body = std::move(conj);
  for (size_t i = g.agents.size(); i-- > 0;)
    body = f_bind(g.agents[i], profile_vars[i], std::move(body));
  return body;
}

FormulaPtr ne_existence_formula(const Cgs& g, const GoalProfile& goals) {
  std::vector<std::string> vars;
  for (size_t i = 0; i < g.agents.size(); ++i)
    vars.push_back("x" + std::to_string(i + 1));
  FormulaPtr body = ne_formula(g, goals, vars);
  for (size_t i = vars.size(); i-- > 0;)
    body = f_exists(vars[i], std::move(body));
  return body;
}

std::pair<bool, NeWitness> check_ne_direct(const Cgs& g, const StrategyProfile& profile,
                                           const GoalProfile& goals,
                                           const EvalOptions& opt) {
  check_goals(g, goals);
  for (const auto& agent : g.agents)
    if (!profile.count(agent))
      throw std::invalid_argument("check_ne_direct: profile misses agent '" + agent + "'");

  Evaluator ev(g, opt);
  NeWitness w;
  w.profile = profile;
  Assignment chi(profile.begin(), profile.end());
  bool is_ne = true;
  for (size_t a = 0; a < g.agents.size(); ++a) {
    const std::string& agent = g.agents[a];
    const FormulaPtr& goal = goals.goals.at(agent);
    Rational own = ev.eval(chi, g.initial, goal);
    w.value[agent] = own;

    std::vector<int> support;
    if (opt.full_enumeration) {
      for (size_t p = 0; p < g.positions.size(); ++p)
        support.push_back(static_cast<int>(p));
    } else {
      support = ev.relevant_positions({static_cast<int>(a)});
    }
    Rational best = own;
    Strategy best_strategy = profile.at(agent);
    Assignment deviated = chi;
    ev.enumerate_strategies(support, [&](const Strategy& s) {
      deviated[agent] = s;
      Rational v = ev.eval(deviated, g.initial, goal);
      if (v > best) {
        best = v;
        best_strategy = s;
      }
    });
    w.best_deviation[agent] = best;
    w.best_deviation_strategy[agent] = best_strategy;
    if (best > own)
      is_ne = false;
  }
  return {is_ne, w};
}

std::optional<std::pair<StrategyProfile, NeWitness>> find_ne(const Cgs& g,
                                                             const GoalProfile& goals,
                                                             const EvalOptions& opt) {
  check_goals(g, goals);
  Evaluator ev(g, opt);

  // Enumeration supports per agent; irrelevant positions are pinned to
  // the first action, which cannot change any outcome.
  std::vector<std::vector<int>> supports;
  for (size_t a = 0; a < g.agents.size(); ++a) {
    if (opt.full_enumeration) {
      std::vector<int> all;
      for (size_t p = 0; p < g.positions.size(); ++p)
        all.push_back(static_cast<int>(p));
      supports.push_back(std::move(all));
    } else {
      supports.push_back(ev.relevant_positions({static_cast<int>(a)}));
    }
  }

  StrategyProfile profile;
  for (const auto& agent : g.agents)
    profile[agent] = Strategy{std::vector<int>(g.positions.size(), 0)};

  size_t n_actions = g.actions.size();
  // odometer over (agent, support position) digits, last digit fastest
  std::vector<std::pair<size_t, int>> digits;  // (agent index, position)
  for (size_t a = 0; a < g.agents.size(); ++a)
    for (int p : supports[a])
      digits.emplace_back(a, p);

  for (;;) {
    auto [ok, witness] = check_ne_direct(g, profile, goals, opt);
    if (ok)
      return std::make_pair(profile, witness);
    size_t k = digits.size();
    while (k > 0) {
      auto [a, p] = digits[k - 1];
      int& slot = profile[g.agents[a]].choice[static_cast<size_t>(p)];
      if (slot + 1 < static_cast<int>(n_actions)) {
        ++slot;
        break;
      }
      slot = 0;
      --k;
    }
    if (k == 0 && !digits.empty())
      return std::nullopt;
    if (digits.empty())
      return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Secretary problem (three candidates, voters Ann and Bob)
// ---------------------------------------------------------------------------

ModelFile gen_secretary() {
  ModelFile m;
  Cgs& g = m.cgs;
  g.agents = {"Ann", "Bob"};
  g.actions = {"y", "n"};
  g.positions = {"q0", "q1", "q2", "q3", "q4", "q5", "q6"};
  g.initial = 0;
  g.labels.assign(7, {});
  g.labels[2] = {"hired_a", "onehired"};
  g.labels[4] = {"hired_b", "onehired"};
  g.labels[6] = {"hired_c", "onehired"};
  g.transition.assign(g.positions.size() * g.profile_count(), -1);

  int yy = static_cast<int>(g.profile_code({0, 0}));
  auto fill = [&](int pos, int on_yy, int otherwise) {
    for (size_t code = 0; code < g.profile_count(); ++code)
      g.set_target(pos, code,
                   static_cast<int>(code) == yy ? on_yy : otherwise);
  };
  // unanimous yes hires the current candidate, anything else moves on
  fill(0, 2, 1);
  fill(1, 4, 3);
  fill(3, 6, 5);
  // hire states and the exhausted state are absorbing
  fill(2, 2, 2);
  fill(4, 4, 4);
  fill(5, 5, 5);
  fill(6, 6, 6);

  m.discounts.emplace_back("dAnn", DiscountFn::hyperbolic());
  m.discounts.emplace_back("dBob", DiscountFn::exponential(Rational(1, 2)));
  return m;
}

GoalProfile secretary_goals(const ModelFile& m) {
  auto env = m.discount_env();
  GoalProfile goals;
  goals.goals["Ann"] =
      parse_formula("F hired_b | F[dAnn] onehired", env, m.cgs.agents);
  goals.goals["Bob"] = parse_formula("F[dBob] onehired", env, m.cgs.agents);
  return goals;
}

Strategy secretary_sigma(const Cgs& g, int yes_from) {
  // Decision positions in candidate order: q0 (a), q1 (b), q3 (c).
  int yes = g.action_index("y");
  int no = g.action_index("n");
  Strategy s;
  s.choice.assign(g.positions.size(), yes);
  const int decision[3] = {g.position_index("q0"), g.position_index("q1"),
                           g.position_index("q3")};
  for (int c = 0; c < 3; ++c)
    s.choice[static_cast<size_t>(decision[c])] = c >= yes_from ? yes : no;
  return s;
}

// ---------------------------------------------------------------------------
// Negotiation with a shrinking pie
// ---------------------------------------------------------------------------

namespace {

std::string share_bucket(const Rational& r) {
  if (r == Rational(2, 3))
    return "twothird";
  if (r == Rational(1, 2))
    return "half";
  if (r == Rational(1, 3))
    return "onethird";
  throw std::invalid_argument("negotiation: share must be 1/3, 1/2 or 2/3");
}

}  // namespace

ModelFile gen_negotiation(const std::vector<NegotiationSplit>& offers, unsigned depth) {
  if (offers.empty())
    throw std::invalid_argument("negotiation: need at least one offer");
  if (depth < 1)
    throw std::invalid_argument("negotiation: depth must be at least 1");
  std::vector<std::string> offer_names;
  for (const auto& o : offers) {
    if (o.proposer + o.responder != Rational::one())
      throw std::invalid_argument("negotiation: shares must sum to 1");
    std::string name = "off" + share_bucket(o.proposer);
    if (std::find(offer_names.begin(), offer_names.end(), name) != offer_names.end())
      throw std::invalid_argument("negotiation: duplicate offer");
    offer_names.push_back(name);
  }

  ModelFile m;
  Cgs& g = m.cgs;
  g.agents = {"Alice", "Beth"};
  g.actions = {"acc"};
  for (const auto& n : offer_names)
    g.actions.push_back(n);
  g.initial = 0;

  // Tree unfolding, breadth first. Node kinds: the root proposer node,
  // responder nodes (pending offer, by whom, offers made so far),
  // absorbing agreement nodes and one shared no-agreement node.
  struct NodeInfo {
    enum class Kind { Proposer, Responder, Absorbing } kind;
    int proposer = 0;     // agent index whose turn it is (Proposer) or who made
                          // the pending offer (Responder)
    size_t offer = 0;     // Responder: index into offers
    unsigned made = 0;    // offers made so far
  };
  std::vector<NodeInfo> nodes;
  std::vector<std::set<std::string>> labels;
  auto new_node = [&](NodeInfo info, std::set<std::string> label) {
    nodes.push_back(info);
    labels.push_back(std::move(label));
    g.positions.push_back("q" + std::to_string(nodes.size() - 1));
    return static_cast<int>(nodes.size() - 1);
  };

  new_node({NodeInfo::Kind::Proposer, 0, 0, 0}, {});
  int no_agreement = -1;
  struct Edge { int from; int actor; int action; int to; };
  std::vector<Edge> edges;

  for (size_t v = 0; v < nodes.size(); ++v) {
    NodeInfo info = nodes[v];
    switch (info.kind) {
      case NodeInfo::Kind::Proposer: {
        // `acc` idles at a proposer node
        edges.push_back({static_cast<int>(v), info.proposer, 0, static_cast<int>(v)});
        for (size_t o = 0; o < offers.size(); ++o) {
          int child = new_node({NodeInfo::Kind::Responder, info.proposer, o,
                                info.made + 1},
                               {});
          edges.push_back({static_cast<int>(v), info.proposer,
                           static_cast<int>(o) + 1, child});
        }
        break;
      }
      case NodeInfo::Kind::Responder: {
        int responder = 1 - info.proposer;
        const NegotiationSplit& o = offers[info.offer];
        // acceptance: agreement with the pending split
        Rational prop_share = o.proposer, resp_share = o.responder;
        std::set<std::string> label = {
            share_bucket(prop_share) + "_" + g.agents[static_cast<size_t>(info.proposer)],
            share_bucket(resp_share) + "_" + g.agents[static_cast<size_t>(responder)]};
        int agree = new_node({NodeInfo::Kind::Absorbing, 0, 0, 0}, std::move(label));
        edges.push_back({static_cast<int>(v), responder, 0, agree});
        // counteroffers, truncated at depth
        for (size_t c = 0; c < offers.size(); ++c) {
          int target;
          if (info.made < depth) {
            target = new_node({NodeInfo::Kind::Responder, responder, c, info.made + 1},
                              {});
          } else {
            if (no_agreement < 0)
              no_agreement = new_node({NodeInfo::Kind::Absorbing, 0, 0, 0}, {});
            target = no_agreement;
          }
          edges.push_back({static_cast<int>(v), responder, static_cast<int>(c) + 1,
                           target});
        }
        break;
      }
      case NodeInfo::Kind::Absorbing:
        break;
    }
  }

  g.labels = std::move(labels);
  g.transition.assign(g.positions.size() * g.profile_count(), -1);
  // Every edge is controlled by one agent; the other's component is
  // irrelevant. Absorbing nodes self-loop on every profile.
  size_t profiles = g.profile_count();
  for (size_t v = 0; v < nodes.size(); ++v)
    if (nodes[v].kind == NodeInfo::Kind::Absorbing)
      for (size_t code = 0; code < profiles; ++code)
        g.set_target(static_cast<int>(v), code, static_cast<int>(v));
  size_t n_actions = g.actions.size();
  for (const auto& e : edges) {
    // stride of the actor's digit in the profile code
    size_t stride = e.actor == 0 ? n_actions : 1;
    for (size_t other = 0; other < n_actions; ++other) {
      size_t code = e.actor == 0
                        ? static_cast<size_t>(e.action) * stride + other
                        : other * n_actions + static_cast<size_t>(e.action);
      g.set_target(e.from, code, e.to);
    }
  }

  DiscountFn pie = DiscountFn::table_then_tail(
      {Rational::one(), Rational::one(), Rational::one()},
      DiscountFn::exponential(Rational(1, 2)));
  m.discounts.emplace_back("dPie", pie);
  m.discounts.emplace_back("dTwoThird", DiscountFn::scaled(Rational(2, 3), pie));
  m.discounts.emplace_back("dHalf", DiscountFn::scaled(Rational(1, 2), pie));
  m.discounts.emplace_back("dOneThird", DiscountFn::scaled(Rational(1, 3), pie));
  return m;
}

ModelFile gen_negotiation() {
  return gen_negotiation({{Rational(1, 2), Rational(1, 2)},
                          {Rational(2, 3), Rational(1, 3)}},
                         2);
}

GoalProfile negotiation_goals(const ModelFile& m) {
  auto env = m.discount_env();
  GoalProfile goals;
  for (const auto& agent : m.cgs.agents)
    goals.goals[agent] = parse_formula("F[dTwoThird] twothird_" + agent +
                                           " | F[dHalf] half_" + agent +
                                           " | F[dOneThird] onethird_" + agent,
                                       env, m.cgs.agents);
  return goals;
}

StrategyProfile negotiation_ne_profile(const Cgs& g) {
  StrategyProfile profile;
  int acc = g.action_index("acc");
  int two_third = g.action_index("offtwothird");
  if (acc < 0 || two_third < 0)
    throw std::invalid_argument("negotiation profile: unexpected action set");
  Strategy alice, beth;
  alice.choice.assign(g.positions.size(), acc);
  alice.choice[static_cast<size_t>(g.position_index("q0"))] = two_third;
  beth.choice.assign(g.positions.size(), acc);
  profile["Alice"] = std::move(alice);
  profile["Beth"] = std::move(beth);
  return profile;
}

}  // namespace sld
