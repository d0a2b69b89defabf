#include "sld/apt.hpp"

#include "sld/lasso.hpp"
#include "sld/textio.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace sld {

TransPtr TransNode::mk_true() {
  static const TransPtr t = [] {
    auto n = std::make_shared<TransNode>();
    n->kind = Kind::True;
    return n;
  }();
  return t;
}

TransPtr TransNode::mk_false() {
  static const TransPtr f = [] {
    auto n = std::make_shared<TransNode>();
    n->kind = Kind::False;
    return n;
  }();
  return f;
}

TransPtr TransNode::mk_move(int direction, int state) {
  auto n = std::make_shared<TransNode>();
  n->kind = Kind::Move;
  n->direction = direction;
  n->state = state;
  return n;
}

TransPtr TransNode::mk_and(TransPtr a, TransPtr b) {
  if (a->kind == Kind::False || b->kind == Kind::False)
    return mk_false();
  if (a->kind == Kind::True)
    return b;
  if (b->kind == Kind::True)
    return a;
  auto n = std::make_shared<TransNode>();
  n->kind = Kind::And;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

TransPtr TransNode::mk_or(TransPtr a, TransPtr b) {
  if (a->kind == Kind::True || b->kind == Kind::True)
    return mk_true();
  if (a->kind == Kind::False)
    return b;
  if (b->kind == Kind::False)
    return a;
  auto n = std::make_shared<TransNode>();
  n->kind = Kind::Or;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

namespace {

// "d" -> "d+1" -> "d+2": display names for shifted discount functions.
std::string bump_shift_name(const std::string& name) {
  auto plus = name.rfind('+');
  if (plus != std::string::npos && plus + 1 < name.size()) {
    bool digits = true;
    for (size_t i = plus + 1; i < name.size(); ++i)
      digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
    if (digits) {
      unsigned long k = std::stoul(name.substr(plus + 1));
      return name.substr(0, plus + 1) + std::to_string(k + 1);
    }
  }
  return name + "+1";
}

bool exponential_family(const DiscountFn& d) {
  if (d.kind() == DiscountFn::Kind::Exponential)
    return true;
  return d.kind() == DiscountFn::Kind::Scaled &&
         d.inner().kind() == DiscountFn::Kind::Exponential;
}

void check_supported(const FormulaPtr& f) {
  if (!f)
    return;
  if (f->kind == Formula::Kind::Exists)
    throw std::invalid_argument(
        "build_apt: strategy quantification needs the nondeterminization pipeline and is "
        "rejected here");
  if (f->kind == Formula::Kind::UntilDisc && !exponential_family(*f->discount))
    throw std::invalid_argument(
        "build_apt: only exponential (or scaled exponential) discounting keeps the "
        "state space finite; got " +
        f->discount->str());
  check_supported(f->lhs);
  check_supported(f->rhs);
}

struct StateKey {
  bool type2;
  FormulaPtr formula;
  bool less;
  Rational threshold;
  std::vector<int> env;

  bool operator==(const StateKey& o) const {
    return type2 == o.type2 && less == o.less && threshold == o.threshold &&
           env == o.env && formula_eq(formula, o.formula);
  }
};

struct StateKeyHash {
  size_t operator()(const StateKey& k) const {
    size_t h = formula_hash(k.formula);
    h ^= std::hash<std::string>()(k.threshold.str()) + 0x9e3779b9 + (h << 6) + (h >> 2);
    h ^= (k.type2 ? 0x51u : 0x15u) ^ (k.less ? 0xa00u : 0x0a0u);
    for (int e : k.env)
      h = h * 31u + static_cast<size_t>(e + 1);
    return h;
  }
};

class Builder {
public:
  Builder(const FormulaPtr& phi, const Rational& theta, const Cgs& g) : g_(g) {
    check_supported(phi);
    if (!theta.in_unit_interval())
      throw std::invalid_argument("build_apt: threshold must lie in [0,1]");
    auto free = free_names(phi, g.agents);
    val_names_.assign(free.begin(), free.end());
    std::vector<int> env0(g.agents.size(), -1);
    for (size_t a = 0; a < g.agents.size(); ++a) {
      for (size_t i = 0; i < val_names_.size(); ++i)
        if (val_names_[i] == g.agents[a])
          env0[a] = static_cast<int>(i);
    }
    initial_ = intern(StateKey{false, phi, false, theta, env0});
  }

  Apt run() {
    // valuations, decoded once
    size_t vals = 1;
    for (size_t i = 0; i < val_names_.size(); ++i)
      vals *= g_.actions.size();
    std::vector<std::vector<int>> valuations(vals, std::vector<int>(val_names_.size(), 0));
    for (size_t code = 0; code < vals; ++code) {
      size_t rest = code;
      for (size_t i = val_names_.size(); i-- > 0;) {
        valuations[code][i] = static_cast<int>(rest % g_.actions.size());
        rest /= g_.actions.size();
      }
    }

    std::vector<std::vector<TransPtr>> transitions;
    for (size_t s = 0; s < states_.size(); ++s) {  // states_ grows while iterating
      transitions.emplace_back(vals * g_.positions.size());
      for (size_t code = 0; code < vals; ++code) {
        for (size_t q = 0; q < g_.positions.size(); ++q) {
          AptState st = states_[s];  // copy: states_ may reallocate during expand
          TransPtr t = st.type2
                           ? expand_t2(st.formula, st.less, st.env, valuations[code],
                                       static_cast<int>(q))
                           : expand_t1(st.formula, st.less, st.threshold, st.env,
                                       valuations[code], static_cast<int>(q));
          transitions[s][code * g_.positions.size() + q] = std::move(t);
        }
      }
    }

    Apt a;
    a.game = g_;
    a.val_names = val_names_;
    a.states = std::move(states_);
    a.transitions = std::move(transitions);
    a.initial = initial_;
    return a;
  }

private:
  int intern(StateKey key) {
    auto it = intern_.find(key);
    if (it != intern_.end())
      return it->second;
    AptState st;
    st.type2 = key.type2;
    st.formula = key.formula;
    st.less = key.less;
    st.threshold = key.threshold;
    st.env = key.env;
    // Accepting states: Boolean untils allowed to stay open forever,
    // i.e. (u1 U u2 < t) and the negative-polarity Type-2 untils.
    bool until_formula = key.formula->kind == Formula::Kind::Until;
    st.priority = (until_formula && key.less) ? 2 : 1;
    int id = static_cast<int>(states_.size());
    states_.push_back(std::move(st));
    intern_.emplace(std::move(key), id);
    return id;
  }

  int succ(const std::vector<int>& env, const std::vector<int>& val, int pos) const {
    std::vector<int> profile(g_.agents.size());
    for (size_t a = 0; a < g_.agents.size(); ++a) {
      int slot = env[a];
      if (slot < 0)
        throw std::logic_error("build_apt: agent without a resolved action source");
      profile[a] = val[static_cast<size_t>(slot)];
    }
    return g_.target(pos, g_.profile_code(profile));
  }

  std::vector<int> rebind(const std::vector<int>& env, const std::string& agent,
                          const std::string& var) const {
    std::vector<int> out = env;
    int slot = -1;
    for (size_t i = 0; i < val_names_.size(); ++i)
      if (val_names_[i] == var)
        slot = static_cast<int>(i);
    int a = g_.agent_index(agent);
    if (a < 0)
      throw std::invalid_argument("build_apt: unknown agent '" + agent + "' in binding");
    out[static_cast<size_t>(a)] = slot;
    return out;
  }

  // Type-1 assertions (formula cmp t). `less` selects the dualized rule
  // family; negation swaps the family and complements the threshold.
  TransPtr expand_t1(const FormulaPtr& f, bool less, const Rational& t,
                     const std::vector<int>& env, const std::vector<int>& val, int pos) {
    using K = Formula::Kind;
    using TN = TransNode;
    switch (f->kind) {
      case K::True:
        if (less)
          return TN::mk_false();  // 1 < t never holds for t in [0,1]
        return t < Rational::one() ? TN::mk_true() : TN::mk_false();
      case K::False:
        if (less)
          return t > Rational::zero() ? TN::mk_true() : TN::mk_false();
        return TN::mk_false();  // 0 > t never holds
      case K::Atom: {
        bool holds = g_.labeled(pos, f->name);
        if (less)
          return (holds || t.is_zero()) ? TN::mk_false() : TN::mk_true();
        return (holds && t < Rational::one()) ? TN::mk_true() : TN::mk_false();
      }
      case K::Or: {
        TransPtr a = expand_t1(f->lhs, less, t, env, val, pos);
        TransPtr b = expand_t1(f->rhs, less, t, env, val, pos);
        return less ? TN::mk_and(a, b) : TN::mk_or(a, b);
      }
      case K::Not:
        return expand_t1(f->lhs, !less, Rational::one() - t, env, val, pos);
      case K::Bind:
        return expand_t1(f->lhs, less, t, rebind(env, f->name, f->var), val, pos);
      case K::Exists:
        throw std::invalid_argument("build_apt: strategy quantification is rejected");
      case K::Next: {
        int dir = succ(env, val, pos);
        return TN::mk_move(dir, intern(StateKey{false, f->lhs, less, t, env}));
      }
      case K::Until: {
        if (!less) {
          if (t >= Rational::one())
            return TN::mk_false();
          if (t.is_zero())
            return expand_t2(posi(f), false, env, val, pos);
          TransPtr b = expand_t1(f->rhs, false, t, env, val, pos);
          TransPtr a = expand_t1(f->lhs, false, t, env, val, pos);
          TransPtr self = TN::mk_move(succ(env, val, pos),
                                      intern(StateKey{false, f, false, t, env}));
          return TN::mk_or(b, TN::mk_and(a, self));
        }
        if (t.is_zero())
          return TN::mk_false();
        if (t > Rational::one())
          return TN::mk_true();
        TransPtr b = expand_t1(f->rhs, true, t, env, val, pos);
        TransPtr a = expand_t1(f->lhs, true, t, env, val, pos);
        TransPtr self =
            TN::mk_move(succ(env, val, pos), intern(StateKey{false, f, true, t, env}));
        return TN::mk_and(b, TN::mk_or(a, self));
      }
      case K::UntilDisc: {
        const DiscountFn& d = *f->discount;
        Rational d0 = d.at(0);
        if (!less) {
          if (t >= d0)
            return TN::mk_false();  // t/d(0) >= 1
          if (t.is_zero())
            return expand_t2(posi(f), false, env, val, pos);
          Rational r = t / d0;
          TransPtr b = expand_t1(f->rhs, false, r, env, val, pos);
          TransPtr a = expand_t1(f->lhs, false, r, env, val, pos);
          TransPtr step = shifted_move(f, false, t, env, val, pos);
          return TN::mk_or(b, TN::mk_and(a, step));
        }
        if (t.is_zero())
          return TN::mk_false();
        if (t > d0)
          return TN::mk_true();  // t/d(0) > 1
        Rational r = t / d0;
        TransPtr b = expand_t1(f->rhs, true, r, env, val, pos);
        TransPtr a = expand_t1(f->lhs, true, r, env, val, pos);
        TransPtr step = shifted_move(f, true, t, env, val, pos);
        return TN::mk_and(b, TN::mk_or(a, step));
      }
    }
    throw std::logic_error("build_apt: bad formula kind");
  }

  // Move into the d^{+1} copy of a discounted until, collapsed at
  // creation once the threshold can no longer be met (true/false per the
  // comparison direction).
  TransPtr shifted_move(const FormulaPtr& f, bool less, const Rational& t,
                        const std::vector<int>& env, const std::vector<int>& val,
                        int pos) {
    using TN = TransNode;
    DiscountFn d1 = f->discount->shift(1);
    Rational d10 = d1.at(0);
    if (!less && t >= d10)
      return TN::mk_false();
    if (less && t > d10)
      return TN::mk_true();
    FormulaPtr shifted =
        f_until_d(d1, bump_shift_name(f->discount_name), f->lhs, f->rhs);
    return TN::mk_move(succ(env, val, pos),
                       intern(StateKey{false, shifted, less, t, env}));
  }

  // Type-2 states: Boolean formulas produced by the posi rewriting.
  // `negative` runs the dualized copy.
  TransPtr expand_t2(const FormulaPtr& f, bool negative, const std::vector<int>& env,
                     const std::vector<int>& val, int pos) {
    using K = Formula::Kind;
    using TN = TransNode;
    switch (f->kind) {
      case K::True:
        return negative ? TN::mk_false() : TN::mk_true();
      case K::False:
        return negative ? TN::mk_true() : TN::mk_false();
      case K::Atom:
        return (g_.labeled(pos, f->name) != negative) ? TN::mk_true() : TN::mk_false();
      case K::Not:
        return expand_t2(f->lhs, !negative, env, val, pos);
      case K::Or: {
        TransPtr a = expand_t2(f->lhs, negative, env, val, pos);
        TransPtr b = expand_t2(f->rhs, negative, env, val, pos);
        return negative ? TN::mk_and(a, b) : TN::mk_or(a, b);
      }
      case K::Bind:
        return expand_t2(f->lhs, negative, rebind(env, f->name, f->var), val, pos);
      case K::Next: {
        int dir = succ(env, val, pos);
        return TN::mk_move(
            dir, intern(StateKey{true, f->lhs, negative, Rational::zero(), env}));
      }
      case K::Until: {
        int dir = succ(env, val, pos);
        TransPtr self =
            TN::mk_move(dir, intern(StateKey{true, f, negative, Rational::zero(), env}));
        TransPtr b = expand_t2(f->rhs, negative, env, val, pos);
        TransPtr a = expand_t2(f->lhs, negative, env, val, pos);
        if (negative)
          return TN::mk_and(b, TN::mk_or(a, self));
        return TN::mk_or(b, TN::mk_and(a, self));
      }
      case K::UntilDisc:
        throw std::logic_error("build_apt: discounted until inside a Boolean state");
      case K::Exists:
        throw std::invalid_argument("build_apt: strategy quantification is rejected");
    }
    throw std::logic_error("build_apt: bad formula kind");
  }

  const Cgs& g_;
  std::vector<std::string> val_names_;
  std::vector<AptState> states_;
  std::unordered_map<StateKey, int, StateKeyHash> intern_;
  int initial_ = 0;
};

std::string render_trans(const TransPtr& t, const Cgs& g) {
  using TN = TransNode;
  switch (t->kind) {
    case TN::Kind::True:
      return "true";
    case TN::Kind::False:
      return "false";
    case TN::Kind::Move:
      return "(" + g.positions[static_cast<size_t>(t->direction)] + ", s" +
             std::to_string(t->state) + ")";
    case TN::Kind::And:
      return "[" + render_trans(t->lhs, g) + " & " + render_trans(t->rhs, g) + "]";
    case TN::Kind::Or:
      return "[" + render_trans(t->lhs, g) + " | " + render_trans(t->rhs, g) + "]";
  }
  return "?";
}

std::string render_state(const AptState& s, const Cgs& g,
                         const std::vector<std::string>& val_names) {
  std::ostringstream os;
  if (s.type2)
    os << (s.less ? "B- " : "B+ ") << render_formula(s.formula);
  else
    os << "(" << render_formula(s.formula) << (s.less ? " < " : " > ")
       << s.threshold.str() << ")";
  os << " env{";
  bool first = true;
  for (size_t a = 0; a < g.agents.size(); ++a) {
    if (!first)
      os << ",";
    first = false;
    os << g.agents[a] << "<-";
    if (s.env[a] < 0)
      os << "_";
    else
      os << val_names[static_cast<size_t>(s.env[a])];
  }
  os << "} priority " << s.priority;
  return os.str();
}

}  // namespace

std::string Apt::dump() const {
  std::ostringstream os;
  os << "alphabet-valuations:";
  for (const auto& n : val_names)
    os << " " << n;
  os << "\n";
  os << "states: " << states.size() << "\n";
  os << "initial: s" << initial << "\n";
  for (size_t s = 0; s < states.size(); ++s)
    os << "state s" << s << ": " << render_state(states[s], game, val_names) << "\n";
  size_t vals = val_count();
  for (size_t s = 0; s < states.size(); ++s) {
    for (size_t code = 0; code < vals; ++code) {
      std::string valtxt;
      size_t rest = code;
      std::vector<int> acts(val_names.size());
      for (size_t i = val_names.size(); i-- > 0;) {
        acts[i] = static_cast<int>(rest % game.actions.size());
        rest /= game.actions.size();
      }
      for (size_t i = 0; i < val_names.size(); ++i)
        valtxt += (i ? " " : "") + val_names[i] + "=" +
                  game.actions[static_cast<size_t>(acts[i])];
      for (size_t q = 0; q < game.positions.size(); ++q) {
        os << "trans s" << s << " | " << valtxt << " | " << game.positions[q] << " : "
           << render_trans(transitions[s][letter_code(code, static_cast<int>(q))], game)
           << "\n";
      }
    }
  }
  return os.str();
}

Apt build_apt(const FormulaPtr& phi, const Rational& theta, const Cgs& g) {
  auto defects = validate_cgs(g);
  if (!defects.empty())
    throw std::invalid_argument("build_apt: invalid game structure");
  Builder b(phi, theta, g);
  return b.run();
}

namespace {

TransPtr dual_trans(const TransPtr& t) {
  using TN = TransNode;
  switch (t->kind) {
    case TN::Kind::True:
      return TN::mk_false();
    case TN::Kind::False:
      return TN::mk_true();
    case TN::Kind::Move:
      return t;
    case TN::Kind::And:
      return TN::mk_or(dual_trans(t->lhs), dual_trans(t->rhs));
    case TN::Kind::Or:
      return TN::mk_and(dual_trans(t->lhs), dual_trans(t->rhs));
  }
  return t;
}

}  // namespace

Apt dualize(const Apt& a) {
  Apt out = a;
  for (auto& st : out.states)
    st.priority += 1;
  for (auto& row : out.transitions)
    for (auto& t : row)
      t = dual_trans(t);
  return out;
}

ParityGame membership_game(const Apt& a, const Cgs& g, const Assignment& chi, int pos) {
  if (g.positions.size() != a.game.positions.size() ||
      g.actions.size() != a.game.actions.size())
    throw std::invalid_argument("apt_membership: game differs from the build-time game");
  // letter valuation per position, read off the positional assignment
  std::vector<size_t> val_code(g.positions.size(), 0);
  for (const auto& name : a.val_names) {
    auto it = chi.find(name);
    if (it == chi.end())
      throw std::invalid_argument("apt_membership: '" + name + "' is unbound");
    if (it->second.choice.size() != g.positions.size())
      throw std::invalid_argument("apt_membership: strategy for '" + name +
                                  "' does not cover all positions");
  }
  for (size_t q = 0; q < g.positions.size(); ++q) {
    size_t code = 0;
    for (const auto& name : a.val_names)
      code = code * g.actions.size() + static_cast<size_t>(chi.at(name).choice[q]);
    val_code[q] = code;
  }

  ParityGame game;
  // sinks: accepting self-loop for true, rejecting for false
  game.nodes.push_back({false, 2, {0}});
  game.nodes.push_back({true, 1, {1}});
  const int true_sink = 0, false_sink = 1;

  std::map<std::pair<int, int>, int> product;  // (position, state) -> node

  // recursive construction over reachable product states
  std::function<int(int, int)> build_state = [&](int q, int s) -> int {
    auto key = std::make_pair(q, s);
    auto it = product.find(key);
    if (it != product.end())
      return it->second;
    int id = static_cast<int>(game.nodes.size());
    game.nodes.push_back(
        {true, a.states[static_cast<size_t>(s)].priority, {}});
    product.emplace(key, id);
    const TransPtr& t =
        a.transitions[static_cast<size_t>(s)]
                     [a.letter_code(val_code[static_cast<size_t>(q)], q)];
    std::function<int(const TransPtr&)> build_formula = [&](const TransPtr& tn) -> int {
      using TN = TransNode;
      switch (tn->kind) {
        case TN::Kind::True:
          return true_sink;
        case TN::Kind::False:
          return false_sink;
        case TN::Kind::Move:
          return build_state(tn->direction, tn->state);
        case TN::Kind::And: {
          int nid = static_cast<int>(game.nodes.size());
          game.nodes.push_back({false, 0, {}});
          int l = build_formula(tn->lhs);
          int r = build_formula(tn->rhs);
          game.nodes[static_cast<size_t>(nid)].succ = {l, r};
          return nid;
        }
        case TN::Kind::Or: {
          int nid = static_cast<int>(game.nodes.size());
          game.nodes.push_back({true, 0, {}});
          int l = build_formula(tn->lhs);
          int r = build_formula(tn->rhs);
          game.nodes[static_cast<size_t>(nid)].succ = {l, r};
          return nid;
        }
      }
      throw std::logic_error("apt_membership: bad transition node");
    };
    int root = build_formula(t);
    game.nodes[static_cast<size_t>(id)].succ = {root};
    return id;
  };

  game.initial = build_state(pos, a.initial);
  return game;
}

bool apt_membership(const Apt& a, const Cgs& g, const Assignment& chi, int pos) {
  ParityGame game = membership_game(a, g, chi, pos);
  ParitySolution sol = solve_parity(game);
  return sol.initial_verifier_wins(game);
}

size_t reachable_state_count(const FormulaPtr& phi, const Rational& theta, const Cgs& g) {
  return build_apt(phi, theta, g).states.size();
}

namespace {

void collect_subformulas(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (!f)
    return;
  for (const auto& existing : out)
    if (formula_eq(existing, f))
      return;
  out.push_back(f);
  collect_subformulas(f->lhs, out);
  collect_subformulas(f->rhs, out);
}

}  // namespace

std::vector<FormulaPtr> extended_closure(const FormulaPtr& phi, unsigned long max_shift) {
  std::vector<FormulaPtr> out;
  collect_subformulas(phi, out);  // Class 1
  size_t class1 = out.size();
  for (size_t i = 0; i < class1; ++i) {  // Class 2: posi of each subformula and its negation
    collect_subformulas(posi(out[i]), out);
    collect_subformulas(notone(out[i]), out);
  }
  for (size_t i = 0; i < class1; ++i) {  // Class 3: shifted discounted untils
    FormulaPtr f = out[i];
    if (f->kind != Formula::Kind::UntilDisc)
      continue;
    std::string name = f->discount_name;
    for (unsigned long k = 1; k <= max_shift; ++k) {
      name = bump_shift_name(name);
      collect_subformulas(f_until_d(f->discount->shift(k), name, f->lhs, f->rhs), out);
    }
  }
  return out;
}

}  // namespace sld
