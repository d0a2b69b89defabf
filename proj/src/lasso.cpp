#include "sld/lasso.hpp"

#include "sld/eval.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace sld {

namespace {

class LtldEvaluator {
public:
  explicit LtldEvaluator(const LassoWord& w) : w_(w) {
    if (w.letters.empty() || w.loop_start >= w.letters.size())
      throw std::invalid_argument("eval_ltld: malformed lasso word");
  }

  Rational value(const FormulaPtr& f, size_t i) {
    i = w_.norm(i);
    auto key = std::make_pair(f.get(), i);
    auto it = memo_.find(key);
    if (it != memo_.end())
      return it->second;
    Rational v = compute(f, i);
    memo_.emplace(key, v);
    return v;
  }

private:
  // Relative lasso shape of the suffix starting at index i.
  std::pair<size_t, size_t> shape_from(size_t i) const {
    if (i <= w_.loop_start)
      return {w_.loop_start - i, w_.letters.size() - i};
    return {0, w_.cycle_length()};
  }

  Rational compute(const FormulaPtr& f, size_t i) {
    using K = Formula::Kind;
    switch (f->kind) {
      case K::Atom:
        return w_.holds(i, f->name) ? Rational::one() : Rational::zero();
      case K::True:
        return Rational::one();
      case K::False:
        return Rational::zero();
      case K::Not:
        return Rational::one() - value(f->lhs, i);
      case K::Or:
        return max(value(f->lhs, i), value(f->rhs, i));
      case K::Next:
        return value(f->lhs, i + 1);
      case K::Until: {
        auto [ls, le] = shape_from(i);
        return detail::scan_until(
            ls, le, [&](size_t j) { return value(f->lhs, i + j); },
            [&](size_t j) { return value(f->rhs, i + j); });
      }
      case K::UntilDisc: {
        auto [ls, le] = shape_from(i);
        return detail::scan_until_discounted(
            ls, le, *f->discount, [&](size_t j) { return value(f->lhs, i + j); },
            [&](size_t j) { return value(f->rhs, i + j); });
      }
      case K::Exists:
      case K::Bind:
        throw std::invalid_argument("eval_ltld: formula is not in LTL[D]");
    }
    throw std::logic_error("eval_ltld: bad formula kind");
  }

  const LassoWord& w_;
  std::map<std::pair<const Formula*, size_t>, Rational> memo_;
};

// posi/notone share one builder so mutual recursion through negation is
// memoized; the memo also keeps the output DAG-linear in the input.
class ExtremeBuilder {
public:
  FormulaPtr posi(const FormulaPtr& f) {
    auto it = posi_memo_.find(f.get());
    if (it != posi_memo_.end())
      return it->second;
    FormulaPtr r = posi_compute(f);
    posi_memo_.emplace(f.get(), r);
    return r;
  }

  FormulaPtr notone(const FormulaPtr& f) {
    auto it = notone_memo_.find(f.get());
    if (it != notone_memo_.end())
      return it->second;
    FormulaPtr r = notone_compute(f);
    notone_memo_.emplace(f.get(), r);
    return r;
  }

private:
  FormulaPtr posi_compute(const FormulaPtr& f) {
    using K = Formula::Kind;
    switch (f->kind) {
      case K::Atom:
      case K::True:
      case K::False:
        return f;
      case K::Not:
        return notone(f->lhs);
      case K::Or:
        return f_or(posi(f->lhs), posi(f->rhs));
      case K::Next:
        return f_next(posi(f->lhs));
      case K::Until:
        return f_until(posi(f->lhs), posi(f->rhs));
      case K::UntilDisc: {
        if (!f->discount->strictly_positive())
          throw std::invalid_argument(
              "posi: discount function reaches 0; this shape is unsupported");
        return f_until(posi(f->lhs), posi(f->rhs));
      }
      case K::Bind:
        return f_bind(f->name, f->var, posi(f->lhs));
      case K::Exists:
        throw std::invalid_argument("posi: strategy quantification is unsupported");
    }
    throw std::logic_error("posi: bad formula kind");
  }

  FormulaPtr notone_compute(const FormulaPtr& f) {
    using K = Formula::Kind;
    switch (f->kind) {
      case K::Atom:
        return f_not(f);
      case K::True:
        return f_false();
      case K::False:
        return f_true();
      case K::Not:
        return posi(f->lhs);
      case K::Or:
        return f_and(notone(f->lhs), notone(f->rhs));
      case K::Next:
        return f_next(notone(f->lhs));
      case K::Until:
        // value = 1 needs some index where rhs reaches 1 with lhs at 1
        // before it; the complement is a Boolean until over the
        // "reaches 1" formulas.
        return f_not(f_until(f_not(notone(f->lhs)), f_not(notone(f->rhs))));
      case K::UntilDisc: {
        Rational d0 = f->discount->at(0);
        if (d0 < Rational::one())
          return f_true();  // every candidate is below d(0) < 1
        if (f->discount->at(1) < Rational::one())
          return notone(f->rhs);  // value 1 forces rhs to hit 1 at index 0
        throw std::invalid_argument(
            "notone: discount function stays at 1 past step 0; this shape is unsupported");
      }
      case K::Bind:
        return f_bind(f->name, f->var, notone(f->lhs));
      case K::Exists:
        throw std::invalid_argument("notone: strategy quantification is unsupported");
    }
    throw std::logic_error("notone: bad formula kind");
  }

  std::map<const Formula*, FormulaPtr> posi_memo_, notone_memo_;
};

}  // namespace

Rational eval_ltld(const LassoWord& w, const FormulaPtr& f) {
  LtldEvaluator ev(w);
  return ev.value(f, 0);
}

FormulaPtr posi(const FormulaPtr& f) {
  ExtremeBuilder b;
  return b.posi(f);
}

FormulaPtr notone(const FormulaPtr& f) {
  ExtremeBuilder b;
  return b.notone(f);
}

}  // namespace sld
