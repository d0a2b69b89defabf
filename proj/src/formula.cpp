#include "sld/formula.hpp"

#include <functional>

namespace sld {

namespace {

std::shared_ptr<Formula> make(Formula::Kind k) { return std::make_shared<Formula>(k); }

}  // namespace

FormulaPtr f_atom(const std::string& prop) {
  auto f = make(Formula::Kind::Atom);
  f->name = prop;
  return f;
}

FormulaPtr f_true() {
  static const FormulaPtr t = make(Formula::Kind::True);
  return t;
}

FormulaPtr f_false() {
  static const FormulaPtr f = make(Formula::Kind::False);
  return f;
}

FormulaPtr f_not(FormulaPtr sub) {
  auto f = make(Formula::Kind::Not);
  f->lhs = std::move(sub);
  return f;
}

FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  auto f = make(Formula::Kind::Or);
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

FormulaPtr f_exists(const std::string& var, FormulaPtr body) {
  auto f = make(Formula::Kind::Exists);
  f->name = var;
  f->lhs = std::move(body);
  return f;
}

FormulaPtr f_bind(const std::string& agent, const std::string& var, FormulaPtr body) {
  auto f = make(Formula::Kind::Bind);
  f->name = agent;
  f->var = var;
  f->lhs = std::move(body);
  return f;
}

FormulaPtr f_next(FormulaPtr sub) {
  auto f = make(Formula::Kind::Next);
  f->lhs = std::move(sub);
  return f;
}

FormulaPtr f_until(FormulaPtr a, FormulaPtr b) {
  auto f = make(Formula::Kind::Until);
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

FormulaPtr f_until_d(const DiscountFn& d, const std::string& dname, FormulaPtr a,
                     FormulaPtr b) {
  auto f = make(Formula::Kind::UntilDisc);
  f->discount = d;
  f->discount_name = dname;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  return f_not(f_or(f_not(std::move(a)), f_not(std::move(b))));
}

FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  return f_or(f_not(std::move(a)), std::move(b));
}

FormulaPtr f_forall(const std::string& var, FormulaPtr body) {
  return f_not(f_exists(var, f_not(std::move(body))));
}

FormulaPtr f_eventually(FormulaPtr sub) { return f_until(f_true(), std::move(sub)); }

FormulaPtr f_globally(FormulaPtr sub) {
  return f_not(f_eventually(f_not(std::move(sub))));
}

FormulaPtr f_eventually_d(const DiscountFn& d, const std::string& dn, FormulaPtr sub) {
  return f_until_d(d, dn, f_true(), std::move(sub));
}

FormulaPtr f_globally_d(const DiscountFn& d, const std::string& dn, FormulaPtr sub) {
  return f_not(f_eventually_d(d, dn, f_not(std::move(sub))));
}

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b)
    return true;
  if (!a || !b || a->kind != b->kind)
    return false;
  switch (a->kind) {
    case Formula::Kind::Atom:
      return a->name == b->name;
    case Formula::Kind::True:
    case Formula::Kind::False:
      return true;
    case Formula::Kind::Not:
    case Formula::Kind::Next:
      return formula_eq(a->lhs, b->lhs);
    case Formula::Kind::Or:
    case Formula::Kind::Until:
      return formula_eq(a->lhs, b->lhs) && formula_eq(a->rhs, b->rhs);
    case Formula::Kind::Exists:
      return a->name == b->name && formula_eq(a->lhs, b->lhs);
    case Formula::Kind::Bind:
      return a->name == b->name && a->var == b->var && formula_eq(a->lhs, b->lhs);
    case Formula::Kind::UntilDisc:
      return *a->discount == *b->discount && formula_eq(a->lhs, b->lhs) &&
             formula_eq(a->rhs, b->rhs);
  }
  return false;
}

size_t formula_hash(const FormulaPtr& f) {
  if (!f)
    return 0;
  size_t h = static_cast<size_t>(f->kind) * 0x9e3779b97f4a7c15ull;
  auto mix = [&h](size_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
  std::hash<std::string> sh;
  switch (f->kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::Exists:
      mix(sh(f->name));
      break;
    case Formula::Kind::Bind:
      mix(sh(f->name));
      mix(sh(f->var));
      break;
    case Formula::Kind::UntilDisc:
      mix(sh(f->discount->str()));
      break;
    default:
      break;
  }
  if (f->lhs)
    mix(formula_hash(f->lhs));
  if (f->rhs)
    mix(formula_hash(f->rhs));
  return h;
}

namespace {

void collect_free(const FormulaPtr& f, const std::vector<std::string>& agents,
                  std::set<std::string>& out) {
  switch (f->kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::True:
    case Formula::Kind::False:
      return;
    case Formula::Kind::Not:
      collect_free(f->lhs, agents, out);
      return;
    case Formula::Kind::Or:
      collect_free(f->lhs, agents, out);
      collect_free(f->rhs, agents, out);
      return;
    case Formula::Kind::Next: {
      collect_free(f->lhs, agents, out);
      for (const auto& a : agents)
        out.insert(a);
      return;
    }
    case Formula::Kind::Until:
    case Formula::Kind::UntilDisc: {
      collect_free(f->lhs, agents, out);
      collect_free(f->rhs, agents, out);
      for (const auto& a : agents)
        out.insert(a);
      return;
    }
    case Formula::Kind::Exists: {
      std::set<std::string> inner;
      collect_free(f->lhs, agents, inner);
      inner.erase(f->name);
      out.insert(inner.begin(), inner.end());
      return;
    }
    case Formula::Kind::Bind: {
      std::set<std::string> inner;
      collect_free(f->lhs, agents, inner);
      if (inner.erase(f->name) > 0)
        inner.insert(f->var);
      out.insert(inner.begin(), inner.end());
      return;
    }
  }
}

}  // namespace

std::set<std::string> free_names(const FormulaPtr& f,
                                 const std::vector<std::string>& agents) {
  std::set<std::string> out;
  collect_free(f, agents, out);
  return out;
}

bool is_ltld(const FormulaPtr& f) {
  if (!f)
    return true;
  if (f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::Bind)
    return false;
  return is_ltld(f->lhs) && is_ltld(f->rhs);
}

}  // namespace sld
