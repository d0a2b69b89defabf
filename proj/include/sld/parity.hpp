#pragma once

#include <vector>

namespace sld {

// Two-player max-parity game. Verifier wins a play iff the highest
// priority seen infinitely often is even. Every node must have at least
// one successor (close dead ends with owner-losing self-loops).
struct ParityGame {
  struct Node {
    bool verifier = false;  // owner
    int priority = 0;
    std::vector<int> succ;
  };
  std::vector<Node> nodes;
  int initial = 0;
};

// Winner per node plus a positional strategy: strategy[v] is the
// successor the winner of v picks when they own v, -1 otherwise.
struct ParitySolution {
  std::vector<bool> verifier_wins;
  std::vector<int> strategy;

  bool initial_verifier_wins(const ParityGame& g) const {
    return verifier_wins[static_cast<size_t>(g.initial)];
  }
};

// Zielonka's recursive attractor decomposition.
ParitySolution solve_parity(const ParityGame& game);

}  // namespace sld
