#include "sld/eval.hpp"

#include <stdexcept>

namespace sld {

namespace detail {

Rational scan_until(size_t loop_start, size_t loop_end, const IndexValueFn& v1,
                    const IndexValueFn& v2) {
  (void)loop_start;
  Rational best = Rational::zero();
  Rational prefix_min = Rational::one();  // values never exceed 1
  for (size_t i = 0; i < loop_end; ++i) {
    best = max(best, min(v2(i), prefix_min));
    if (best.is_one())
      return best;
    prefix_min = min(prefix_min, v1(i));
    if (prefix_min <= best)
      return best;  // no later candidate can beat the minimum so far
  }
  return best;
}

Rational scan_until_discounted(size_t loop_start, size_t loop_end, const DiscountFn& d,
                               const IndexValueFn& v1, const IndexValueFn& v2) {
  Rational best = Rational::zero();
  Rational prefix_min = Rational::one();
  std::vector<Rational> cycle_v2;
  for (size_t i = 0; i < loop_end; ++i) {
    Rational di = d.at(i);
    Rational v2i = v2(i);
    if (i >= loop_start)
      cycle_v2.push_back(v2i);
    best = max(best, min(di * v2i, prefix_min));
    prefix_min = min(prefix_min, di * v1(i));
  }
  // Everything after the first full cycle revisits cycle positions with
  // smaller discounts; continue only while min(d(i)*Vmax, M) can still
  // beat the best candidate. crossing_index(d, best/Vmax) bounds the
  // continuation, so this terminates.
  Rational v2max = Rational::zero();
  for (const auto& v : cycle_v2)
    v2max = max(v2max, v);
  if (v2max.is_zero() || prefix_min.is_zero())
    return best;
  size_t cycle = loop_end - loop_start;
  for (size_t i = loop_end; min(d.at(i) * v2max, prefix_min) > best; ++i) {
    size_t pos_index = loop_start + (i - loop_start) % cycle;
    Rational di = d.at(i);
    best = max(best, min(di * v2(pos_index), prefix_min));
    prefix_min = min(prefix_min, di * v1(pos_index));
    if (prefix_min <= best)
      break;
  }
  return best;
}

}  // namespace detail

Rational eval_until(const LassoPlay& play, const IndexValueFn& v1, const IndexValueFn& v2) {
  return detail::scan_until(play.loop_start, play.loop_end, v1, v2);
}

Rational eval_until_discounted(const LassoPlay& play, const DiscountFn& d,
                               const IndexValueFn& v1, const IndexValueFn& v2) {
  return detail::scan_until_discounted(play.loop_start, play.loop_end, d, v1, v2);
}

// ---------------------------------------------------------------------------
// Evaluator
// ---------------------------------------------------------------------------

Evaluator::Evaluator(const Cgs& g, EvalOptions opt) : g_(g), opt_(opt) {
  auto defects = validate_cgs(g);
  if (!defects.empty())
    throw std::invalid_argument("eval: invalid game structure: " + defects.front());
  // A position is relevant for an agent when switching that agent's
  // action can change the successor for some profile of the others.
  size_t n_agents = g.agents.size();
  size_t n_actions = g.actions.size();
  agent_relevant_.assign(n_agents, std::vector<bool>(g.positions.size(), false));
  size_t profiles = g.profile_count();
  for (size_t a = 0; a < n_agents; ++a) {
    // stride of agent a's digit in the profile code
    size_t stride = 1;
    for (size_t rest = a + 1; rest < n_agents; ++rest)
      stride *= n_actions;
    for (size_t p = 0; p < g.positions.size(); ++p) {
      bool relevant = false;
      for (size_t code = 0; code < profiles && !relevant; ++code) {
        size_t digit = (code / stride) % n_actions;
        if (digit != 0)
          continue;  // enumerate each others-profile once, via digit 0
        int base = g.target(static_cast<int>(p), code);
        for (size_t alt = 1; alt < n_actions; ++alt) {
          if (g.target(static_cast<int>(p), code + alt * stride) != base) {
            relevant = true;
            break;
          }
        }
      }
      agent_relevant_[a][p] = relevant;
    }
  }
}

std::vector<int> Evaluator::relevant_positions(const std::set<int>& agents) const {
  std::vector<int> out;
  for (size_t p = 0; p < g_.positions.size(); ++p) {
    for (int a : agents) {
      if (agent_relevant_[static_cast<size_t>(a)][p]) {
        out.push_back(static_cast<int>(p));
        break;
      }
    }
  }
  return out;
}

void Evaluator::enumerate_strategies(const std::vector<int>& support,
                                     const std::function<void(const Strategy&)>& fn) const {
  Strategy s;
  s.choice.assign(g_.positions.size(), 0);
  size_t n_actions = g_.actions.size();
  if (support.empty()) {
    fn(s);
    return;
  }
  for (;;) {
    fn(s);
    // odometer: last support position varies fastest
    size_t k = support.size();
    while (k > 0) {
      int p = support[k - 1];
      if (s.choice[static_cast<size_t>(p)] + 1 < static_cast<int>(n_actions)) {
        ++s.choice[static_cast<size_t>(p)];
        break;
      }
      s.choice[static_cast<size_t>(p)] = 0;
      --k;
    }
    if (k == 0)
      return;
  }
}

std::set<int> Evaluator::bind_targets(const FormulaPtr& f, const std::string& var) const {
  std::set<int> out;
  if (!f)
    return out;
  if (f->kind == Formula::Kind::Exists && f->name == var)
    return out;  // shadowed below this point
  if (f->kind == Formula::Kind::Bind && f->var == var) {
    int a = g_.agent_index(f->name);
    if (a >= 0)
      out.insert(a);
  }
  for (const auto& child : {f->lhs, f->rhs}) {
    if (!child)
      continue;
    auto sub = bind_targets(child, var);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

const std::set<std::string>& Evaluator::free_of(const FormulaPtr& f) {
  auto it = free_cache_.find(f.get());
  if (it != free_cache_.end())
    return it->second;
  return free_cache_.emplace(f.get(), free_names(f, g_.agents)).first->second;
}

std::string Evaluator::fingerprint(const Assignment& chi, const FormulaPtr& f) {
  std::string fp;
  for (const auto& name : free_of(f)) {
    auto it = chi.find(name);
    fp += name;
    fp += '=';
    if (it == chi.end()) {
      fp += "?;";
      continue;
    }
    for (int a : it->second.choice)
      fp += static_cast<char>('0' + a);
    fp += ';';
  }
  return fp;
}

Rational Evaluator::eval(const Assignment& chi, int pos, const FormulaPtr& f) {
  if (!opt_.memoize)
    return eval_inner(chi, pos, f);
  std::string key = std::to_string(pos);
  key += '@';
  key += std::to_string(reinterpret_cast<uintptr_t>(f.get()));
  key += '|';
  key += fingerprint(chi, f);
  auto it = memo_.find(key);
  if (it != memo_.end())
    return it->second;
  Rational v = eval_inner(chi, pos, f);
  memo_.emplace(std::move(key), v);
  return v;
}

Rational Evaluator::eval_inner(const Assignment& chi, int pos, const FormulaPtr& f) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::Atom:
      return g_.labeled(pos, f->name) ? Rational::one() : Rational::zero();
    case K::True:
      return Rational::one();
    case K::False:
      return Rational::zero();
    case K::Not:
      return Rational::one() - eval(chi, pos, f->lhs);
    case K::Or:
      return max(eval(chi, pos, f->lhs), eval(chi, pos, f->rhs));
    case K::Exists: {
      std::vector<int> support;
      if (opt_.full_enumeration) {
        for (size_t p = 0; p < g_.positions.size(); ++p)
          support.push_back(static_cast<int>(p));
      } else {
        support = relevant_positions(bind_targets(f->lhs, f->name));
      }
      Rational best = Rational::zero();
      bool first = true;
      Assignment inner = chi;
      enumerate_strategies(support, [&](const Strategy& s) {
        inner[f->name] = s;
        Rational v = eval(inner, pos, f->lhs);
        if (first || v > best) {
          best = v;
          first = false;
        }
      });
      return best;
    }
    case K::Bind: {
      auto it = chi.find(f->var);
      if (it == chi.end())
        throw std::invalid_argument("eval: unbound strategy variable '" + f->var + "'");
      Assignment inner = chi;
      inner[f->name] = it->second;
      return eval(inner, pos, f->lhs);
    }
    case K::Next: {
      LassoPlay play = outcome(g_, chi, pos);
      return eval(chi, play.at(1), f->lhs);
    }
    case K::Until: {
      LassoPlay play = outcome(g_, chi, pos);
      return eval_until(
          play, [&](size_t i) { return eval(chi, play.at(i), f->lhs); },
          [&](size_t i) { return eval(chi, play.at(i), f->rhs); });
    }
    case K::UntilDisc: {
      LassoPlay play = outcome(g_, chi, pos);
      return eval_until_discounted(
          play, *f->discount, [&](size_t i) { return eval(chi, play.at(i), f->lhs); },
          [&](size_t i) { return eval(chi, play.at(i), f->rhs); });
    }
  }
  throw std::logic_error("eval: bad formula kind");
}

Rational eval(const Cgs& g, const Assignment& chi, int pos, const FormulaPtr& f,
              const EvalOptions& opt) {
  Evaluator ev(g, opt);
  return ev.eval(chi, pos, f);
}

std::pair<bool, Report> check_threshold(const Cgs& g, const FormulaPtr& f,
                                        const Rational& theta, ThresholdCmp cmp,
                                        const EvalOptions& opt) {
  if (!theta.in_unit_interval())
    throw std::invalid_argument("check_threshold: threshold must lie in [0,1]");
  if (!free_names(f, g.agents).empty())
    throw std::invalid_argument("check_threshold: formula is not a sentence");
  Rational value = eval(g, {}, g.initial, f, opt);
  bool verdict = cmp == ThresholdCmp::GreaterEqual ? value >= theta : value > theta;
  Report r;
  r.query = render_formula(f) + (cmp == ThresholdCmp::GreaterEqual ? " >= " : " > ") +
            theta.str();
  r.value = value;
  r.verdict = verdict;
  return {verdict, r};
}

}  // namespace sld
