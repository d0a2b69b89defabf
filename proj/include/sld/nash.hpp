#pragma once

#include "sld/cgs.hpp"
#include "sld/eval.hpp"
#include "sld/formula.hpp"
#include "sld/rational.hpp"
#include "sld/textio.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sld {

// One LTL[D] goal per agent.
struct GoalProfile {
  std::map<std::string, FormulaPtr> goals;
};

using StrategyProfile = std::map<std::string, Strategy>;

// Replayable record of a direct equilibrium check: the profile, each
// agent's goal value under it, and the best unilateral deviation found.
struct NeWitness {
  StrategyProfile profile;
  std::map<std::string, Rational> value;
  std::map<std::string, Rational> best_deviation;
  StrategyProfile best_deviation_strategy;
};

// phi_NE(vars) = (Ag, vars) /\_a ((A b.(a,b) psi_a) -> psi_a), one
// profile variable per agent in declared order.
FormulaPtr ne_formula(const Cgs& g, const GoalProfile& goals,
                      const std::vector<std::string>& profile_vars);

// phi^_NE = E x1 ... E xn phi_NE(x1..xn) with canonical variable names.
FormulaPtr ne_existence_formula(const Cgs& g, const GoalProfile& goals);

// Best-response check: the profile is a Nash equilibrium iff no agent's
// unilateral memoryless deviation strictly improves their goal value.
std::pair<bool, NeWitness> check_ne_direct(const Cgs& g, const StrategyProfile& profile,
                                           const GoalProfile& goals,
                                           const EvalOptions& opt = {});

// Enumerates memoryless profiles deterministically (agents in declared
// order, positions in declared order, actions fastest) and returns the
// first equilibrium, if any.
std::optional<std::pair<StrategyProfile, NeWitness>> find_ne(const Cgs& g,
                                                             const GoalProfile& goals,
                                                             const EvalOptions& opt = {});

// The secretary-problem game: three candidates, voters Ann and Bob,
// hyperbolic discounting for Ann and exponential 1/2 for Bob.
ModelFile gen_secretary();
GoalProfile secretary_goals(const ModelFile& m);

// Named strategies from the secretary analysis: yes-from indicates the
// first candidate the voter starts approving (0 = a, 1 = b, 2 = c).
Strategy secretary_sigma(const Cgs& g, int yes_from);

// Alternating-offer negotiation over a shrinking pie. Splits are
// proposer-relative shares from {1/3, 1/2, 2/3} summing to 1; depth is
// the total number of offers after which counteroffers fall into an
// absorbing no-agreement position.
struct NegotiationSplit {
  Rational proposer;
  Rational responder;
};
ModelFile gen_negotiation(const std::vector<NegotiationSplit>& offers, unsigned depth);
ModelFile gen_negotiation();  // offers [[1/2,1/2],[2/3,1/3]], depth 2
GoalProfile negotiation_goals(const ModelFile& m);

// The equilibrium profile discussed with the negotiation example: Alice
// opens with the [2/3,1/3] split and accepts counteroffers; Beth accepts
// everywhere.
StrategyProfile negotiation_ne_profile(const Cgs& g);

}  // namespace sld
