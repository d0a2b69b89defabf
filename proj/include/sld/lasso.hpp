#pragma once

#include "sld/formula.hpp"
#include "sld/rational.hpp"

#include <set>
#include <string>
#include <vector>

namespace sld {

// Ultimately periodic labeled word: letters[0..] followed by the suffix
// from loop_start repeated forever.
struct LassoWord {
  std::vector<std::set<std::string>> letters;
  size_t loop_start = 0;

  size_t length() const { return letters.size(); }
  size_t cycle_length() const { return letters.size() - loop_start; }
  size_t norm(size_t i) const {
    if (i < letters.size())
      return i;
    return loop_start + (i - loop_start) % cycle_length();
  }
  bool holds(size_t i, const std::string& prop) const {
    return letters[norm(i)].count(prop) > 0;
  }
};

// Exact LTL[D] satisfaction value at index 0. Rejects formulas with
// quantifiers or bindings. Serves as the independent oracle for the
// CGS evaluator and for automaton membership.
Rational eval_ltld(const LassoWord& w, const FormulaPtr& f);

// Boolean formula characterizing "satisfaction value > 0". Requires every
// discounted until to use a strictly positive discount function.
FormulaPtr posi(const FormulaPtr& f);

// Boolean formula characterizing "satisfaction value < 1". Requires each
// discounted until's function to start below 1 or to drop below 1 at
// step 1.
FormulaPtr notone(const FormulaPtr& f);

}  // namespace sld
