#include "sld/cgs.hpp"

#include <algorithm>
#include <stdexcept>

namespace sld {

namespace {

int find_name(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

}  // namespace

int Cgs::position_index(const std::string& name) const { return find_name(positions, name); }
int Cgs::action_index(const std::string& name) const { return find_name(actions, name); }
int Cgs::agent_index(const std::string& name) const { return find_name(agents, name); }

std::vector<std::string> validate_cgs(const Cgs& g) {
  std::vector<std::string> errors;
  if (g.agents.empty())
    errors.push_back("no agents declared");
  if (g.actions.empty())
    errors.push_back("no actions declared");
  if (g.positions.empty())
    errors.push_back("no positions declared");
  if (g.initial < 0 || g.initial >= static_cast<int>(g.positions.size()))
    errors.push_back("initial position is not a declared position");
  if (g.labels.size() != g.positions.size())
    errors.push_back("labeling does not cover the position set");
  if (g.positions.empty() || g.actions.empty() || g.agents.empty())
    return errors;

  size_t profiles = g.profile_count();
  if (g.transition.size() != g.positions.size() * profiles) {
    errors.push_back("transition table has the wrong size");
    return errors;
  }
  for (size_t p = 0; p < g.positions.size(); ++p) {
    for (size_t c = 0; c < profiles; ++c) {
      int dst = g.transition[p * profiles + c];
      if (dst >= 0 && dst < static_cast<int>(g.positions.size()))
        continue;
      // decode the profile for the message
      std::string prof;
      size_t rest = c;
      std::vector<int> acts(g.agents.size());
      for (size_t a = g.agents.size(); a-- > 0;) {
        acts[a] = static_cast<int>(rest % g.actions.size());
        rest /= g.actions.size();
      }
      for (size_t a = 0; a < acts.size(); ++a)
        prof += (a ? "," : "") + g.actions[static_cast<size_t>(acts[a])];
      if (dst < 0)
        errors.push_back("missing transition at " + g.positions[p] + " for profile (" +
                         prof + ")");
      else
        errors.push_back("transition target out of range at " + g.positions[p] +
                         " for profile (" + prof + ")");
    }
  }
  return errors;
}

LassoPlay outcome(const Cgs& g, const Assignment& chi, int start) {
  std::vector<const Strategy*> strat(g.agents.size(), nullptr);
  for (size_t a = 0; a < g.agents.size(); ++a) {
    auto it = chi.find(g.agents[a]);
    if (it == chi.end())
      throw std::invalid_argument("outcome: agent '" + g.agents[a] + "' is unbound");
    if (it->second.choice.size() != g.positions.size())
      throw std::invalid_argument("outcome: strategy for '" + g.agents[a] +
                                  "' does not cover all positions");
    strat[a] = &it->second;
  }

  LassoPlay play;
  std::vector<int> first_seen(g.positions.size(), -1);
  int cur = start;
  for (;;) {
    first_seen[static_cast<size_t>(cur)] = static_cast<int>(play.positions.size());
    play.positions.push_back(cur);
    size_t code = 0;
    for (size_t a = 0; a < g.agents.size(); ++a)
      code = code * g.actions.size() +
             static_cast<size_t>(strat[a]->choice[static_cast<size_t>(cur)]);
    int nxt = g.target(cur, code);
    if (first_seen[static_cast<size_t>(nxt)] >= 0) {
      play.loop_start = static_cast<size_t>(first_seen[static_cast<size_t>(nxt)]);
      play.loop_end = play.positions.size();
      play.positions.push_back(nxt);
      return play;
    }
    cur = nxt;
  }
}

}  // namespace sld
