#pragma once

#include "sld/discount.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sld {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// SL[D] abstract syntax tree. Only the core connectives exist as nodes;
// conjunction, implication, F/G and their discounted forms, and the
// universal quantifier are desugared by the constructors below. Nodes are
// immutable and shared.
class Formula {
public:
  enum class Kind {
    Atom,       // name
    True,
    False,
    Not,        // lhs
    Or,         // lhs, rhs
    Exists,     // name (variable), lhs
    Bind,       // name (agent), var (variable), lhs
    Next,       // lhs
    Until,      // lhs, rhs
    UntilDisc,  // discount, lhs, rhs
  };

  Kind kind;
  std::string name;  // Atom: proposition, Exists: variable, Bind: agent
  std::string var;   // Bind only
  FormulaPtr lhs, rhs;
  std::optional<DiscountFn> discount;  // UntilDisc only
  std::string discount_name;           // display name for rendering

  explicit Formula(Kind k) : kind(k) {}
};

FormulaPtr f_atom(const std::string& prop);
FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_not(FormulaPtr sub);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_exists(const std::string& var, FormulaPtr body);
FormulaPtr f_bind(const std::string& agent, const std::string& var, FormulaPtr body);
FormulaPtr f_next(FormulaPtr sub);
FormulaPtr f_until(FormulaPtr a, FormulaPtr b);
FormulaPtr f_until_d(const DiscountFn& d, const std::string& dname, FormulaPtr a, FormulaPtr b);

// Parser sugar, desugared on construction.
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);              // !(!a | !b)
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);          // !a | b
FormulaPtr f_forall(const std::string& var, FormulaPtr body);  // !E var . !body
FormulaPtr f_eventually(FormulaPtr sub);                   // true U sub
FormulaPtr f_globally(FormulaPtr sub);                     // !F !sub
FormulaPtr f_eventually_d(const DiscountFn& d, const std::string& dn, FormulaPtr sub);
FormulaPtr f_globally_d(const DiscountFn& d, const std::string& dn, FormulaPtr sub);

// Structural equality / hash. The declared discount name is display
// metadata and does not participate; discount functions compare
// structurally.
bool formula_eq(const FormulaPtr& a, const FormulaPtr& b);
size_t formula_hash(const FormulaPtr& f);

// free(phi): variables bound to an agent without being quantified upon,
// and agents with a temporal operator not under a binding for them.
// A formula is a sentence iff the result is empty.
std::set<std::string> free_names(const FormulaPtr& f, const std::vector<std::string>& agents);

// True when the formula stays in the LTL[D] fragment (no quantifiers,
// no bindings).
bool is_ltld(const FormulaPtr& f);

}  // namespace sld
