#pragma once

#include "sld/cgs.hpp"
#include "sld/discount.hpp"
#include "sld/formula.hpp"
#include "sld/rational.hpp"
#include "sld/textio.hpp"

#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace sld {

using IndexValueFn = std::function<Rational(size_t)>;

// sup over i of min(v2(i), min_{j<i} v1(j)) on an ultimately periodic
// play. Candidates past the first full cycle are dominated, so the scan
// stops at loop_end.
Rational eval_until(const LassoPlay& play, const IndexValueFn& v1, const IndexValueFn& v2);

// sup over i of min(d(i)*v2(i), min_{j<i} d(j)*v1(j)). Scans the prefix
// plus one full cycle, then keeps scanning only while an improvement is
// still possible; the crossing index of d bounds that continuation.
Rational eval_until_discounted(const LassoPlay& play, const DiscountFn& d,
                               const IndexValueFn& v1, const IndexValueFn& v2);

namespace detail {
// Shape-only variants shared with the lasso-word oracle.
Rational scan_until(size_t loop_start, size_t loop_end, const IndexValueFn& v1,
                    const IndexValueFn& v2);
Rational scan_until_discounted(size_t loop_start, size_t loop_end, const DiscountFn& d,
                               const IndexValueFn& v1, const IndexValueFn& v2);
}  // namespace detail

struct EvalOptions {
  // Enumerate quantified strategies over every position instead of only
  // the positions where the candidate agents' actions can change a
  // transition. Both modes compute the same value (unreachable/inert
  // choices cannot affect any outcome); the restricted mode is the
  // default because full enumeration is hopeless on wider games.
  bool full_enumeration = false;
  bool memoize = true;
};

// Satisfaction value of Definition 3 under memoryless strategies.
// The assignment must cover free(f); the model must be valid.
Rational eval(const Cgs& g, const Assignment& chi, int pos, const FormulaPtr& f,
              const EvalOptions& opt = {});

enum class ThresholdCmp { GreaterEqual, Greater };

// Threshold model checking: compares the satisfaction value of sentence f
// at the initial position against theta, exactly.
std::pair<bool, Report> check_threshold(const Cgs& g, const FormulaPtr& f,
                                        const Rational& theta, ThresholdCmp cmp,
                                        const EvalOptions& opt = {});

// Evaluation context with a per-query memo cache keyed by
// (position, subformula, assignment restricted to the subformula's free
// names). Exposed so batch callers (equilibrium search) can share it.
class Evaluator {
public:
  explicit Evaluator(const Cgs& g, EvalOptions opt = {});

  Rational eval(const Assignment& chi, int pos, const FormulaPtr& f);

  // Positions where one of `agents`' action choice can change some
  // transition; strategy enumeration only varies these.
  std::vector<int> relevant_positions(const std::set<int>& agents) const;

  // All memoryless strategies over the given support, every other
  // position pinned to action 0, in lexicographic action order.
  void enumerate_strategies(const std::vector<int>& support,
                            const std::function<void(const Strategy&)>& fn) const;

  const Cgs& game() const { return g_; }

private:
  Rational eval_inner(const Assignment& chi, int pos, const FormulaPtr& f);
  const std::set<std::string>& free_of(const FormulaPtr& f);
  std::string fingerprint(const Assignment& chi, const FormulaPtr& f);
  std::set<int> bind_targets(const FormulaPtr& f, const std::string& var) const;

  const Cgs& g_;
  EvalOptions opt_;
  std::vector<std::vector<bool>> agent_relevant_;  // [agent][position]
  std::map<const Formula*, std::set<std::string>> free_cache_;
  std::unordered_map<std::string, Rational> memo_;
};

}  // namespace sld
