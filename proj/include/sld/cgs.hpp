#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace sld {

// Finite concurrent game structure. Agents, actions and positions are
// interned; the transition table is indexed by (position, profile code)
// where a profile code is the mixed-radix encoding of one action index
// per agent, agent-major. All actions are available at every position,
// so a valid table is total over the full profile space. Missing entries
// are kept as -1 until validate() is consulted.
struct Cgs {
  std::vector<std::string> agents;
  std::vector<std::string> actions;
  std::vector<std::string> positions;
  int initial = -1;
  std::vector<int> transition;               // size positions * profile_count
  std::vector<std::set<std::string>> labels; // per position

  size_t profile_count() const {
    size_t n = 1;
    for (size_t i = 0; i < agents.size(); ++i)
      n *= actions.size();
    return n;
  }

  size_t profile_code(const std::vector<int>& profile) const {
    size_t code = 0;
    for (int a : profile)
      code = code * actions.size() + static_cast<size_t>(a);
    return code;
  }

  int target(int pos, size_t profile_code) const {
    return transition[static_cast<size_t>(pos) * profile_count() + profile_code];
  }

  void set_target(int pos, size_t profile_code, int dst) {
    transition[static_cast<size_t>(pos) * profile_count() + profile_code] = dst;
  }

  bool labeled(int pos, const std::string& prop) const {
    return labels[static_cast<size_t>(pos)].count(prop) > 0;
  }

  int position_index(const std::string& name) const;
  int action_index(const std::string& name) const;
  int agent_index(const std::string& name) const;
};

// Memoryless strategy: one action index per position.
struct Strategy {
  std::vector<int> choice;

  bool operator==(const Strategy& o) const { return choice == o.choice; }
};

// Maps agent and variable names to strategies.
using Assignment = std::map<std::string, Strategy>;

// A play of a finite CGS under a memoryless assignment: finite prefix,
// then the suffix from loop_start repeats forever. positions has length
// loop_end + 1 and positions[loop_end] == positions[loop_start] (the
// junction is stored so the loop claim is checkable).
struct LassoPlay {
  std::vector<int> positions;
  size_t loop_start = 0;
  size_t loop_end = 0;

  size_t cycle_length() const { return loop_end - loop_start; }

  int at(size_t i) const {
    if (i < loop_end)
      return positions[i];
    return positions[loop_start + (i - loop_start) % cycle_length()];
  }
};

// Returns the empty list when every CGS invariant holds, otherwise one
// message per defect (missing transitions, out-of-range names, ...).
std::vector<std::string> validate_cgs(const Cgs& g);

// The unique play Out(assignment, start). Every agent must be bound to a
// memoryless strategy; throws std::invalid_argument otherwise.
LassoPlay outcome(const Cgs& g, const Assignment& chi, int start);

}  // namespace sld
