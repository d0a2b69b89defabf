#pragma once

#include "sld/cgs.hpp"
#include "sld/formula.hpp"
#include "sld/parity.hpp"
#include "sld/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace sld {

// Positive Boolean combination of moves (direction, state), with constant
// leaves. And/Or are binary; construction simplifies through constants.
struct TransNode;
using TransPtr = std::shared_ptr<const TransNode>;

struct TransNode {
  enum class Kind { True, False, Move, And, Or };
  Kind kind = Kind::True;
  int direction = -1;  // Move: position index
  int state = -1;      // Move: automaton state id
  TransPtr lhs, rhs;

  static TransPtr mk_true();
  static TransPtr mk_false();
  static TransPtr mk_move(int direction, int state);
  static TransPtr mk_and(TransPtr a, TransPtr b);
  static TransPtr mk_or(TransPtr a, TransPtr b);
};

// Automaton state. Type-1 states assert (formula cmp threshold) with
// cmp in {<, >}; Type-2 states carry a Boolean formula from the posi
// rewriting, with `less` doubling as negative polarity (the dualized
// copy). env maps each agent to the alphabet slot whose action it reads;
// bindings rewrite it.
struct AptState {
  bool type2 = false;
  FormulaPtr formula;
  bool less = false;
  Rational threshold;
  std::vector<int> env;
  int priority = 1;  // 2 = accepting (even), 1 = rejecting
};

// Alternating parity tree automaton over the assignment-state encoding:
// the alphabet pairs a valuation of the formula's free names with a
// position, directions are positions. Transitions are materialized per
// (state, letter).
class Apt {
public:
  Cgs game;  // alphabet/directions refer to this structure
  std::vector<std::string> val_names;
  std::vector<AptState> states;
  std::vector<std::vector<TransPtr>> transitions;  // [state][letter]
  int initial = 0;

  size_t val_count() const {
    size_t n = 1;
    for (size_t i = 0; i < val_names.size(); ++i)
      n *= game.actions.size();
    return n;
  }
  size_t letter_count() const { return val_count() * game.positions.size(); }
  size_t letter_code(size_t val_code, int pos) const {
    return val_code * game.positions.size() + static_cast<size_t>(pos);
  }

  // Stable line format: states with priorities, then one line per
  // (state, letter) transition.
  std::string dump() const;
};

// Builds the automaton for (phi > theta). The formula may use bindings
// and temporal operators; strategy quantification is rejected (it would
// need the nondeterminization pipeline). Discount functions must be
// exponential or scaled exponential, the setting where the reachable
// state space is guaranteed finite.
Apt build_apt(const FormulaPtr& phi, const Rational& theta, const Cgs& g);

// Complement: swaps and/or and true/false in every transition and bumps
// every priority by one.
Apt dualize(const Apt& a);

// Does the automaton accept the assignment-state encoding of (g, chi,
// pos)? chi must be memoryless and cover the alphabet's names. Decided
// via the product parity game (positional assignments collapse the
// history tree onto positions).
bool apt_membership(const Apt& a, const Cgs& g, const Assignment& chi, int pos);

// Number of distinct automaton states reachable from the initial state.
size_t reachable_state_count(const FormulaPtr& phi, const Rational& theta, const Cgs& g);

// Extended closure: subformulas, subformulas of their posi/notone
// rewrites, and discount-shifted untils up to max_shift (the automaton
// generates those on demand; the bound stands in for its threshold
// cutoff). Duplicates are removed structurally.
std::vector<FormulaPtr> extended_closure(const FormulaPtr& phi, unsigned long max_shift);

// The membership game for (a, g, chi, pos); exposed for inspection and
// tests. first = game, second = the product node of (pos, initial).
ParityGame membership_game(const Apt& a, const Cgs& g, const Assignment& chi, int pos);

}  // namespace sld
