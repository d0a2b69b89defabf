#include "sld/parity.hpp"

#include <stdexcept>

namespace sld {

namespace {

struct Solver {
  const ParityGame& g;
  std::vector<std::vector<int>> preds;
  std::vector<bool> win_verifier;
  std::vector<int> strategy;

  explicit Solver(const ParityGame& game)
      : g(game),
        preds(game.nodes.size()),
        win_verifier(game.nodes.size(), false),
        strategy(game.nodes.size(), -1) {
    for (size_t v = 0; v < game.nodes.size(); ++v)
      for (int s : game.nodes[v].succ)
        preds[static_cast<size_t>(s)].push_back(static_cast<int>(v));
  }

  // Attractor of `player` to `targets` within `alive`. Records the
  // attracting edge for player-owned nodes drawn in from outside the
  // target set.
  std::vector<bool> attract(bool player, const std::vector<bool>& targets,
                            const std::vector<bool>& alive) {
    size_t n = g.nodes.size();
    std::vector<bool> in(n, false);
    std::vector<int> pending(n, 0);
    std::vector<int> queue;
    for (size_t v = 0; v < n; ++v) {
      if (!alive[v])
        continue;
      if (targets[v]) {
        in[v] = true;
        queue.push_back(static_cast<int>(v));
      } else if (g.nodes[v].verifier != player) {
        int cnt = 0;
        for (int s : g.nodes[v].succ)
          if (alive[static_cast<size_t>(s)])
            ++cnt;
        pending[v] = cnt;
      }
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (int u : preds[static_cast<size_t>(v)]) {
        size_t ui = static_cast<size_t>(u);
        if (!alive[ui] || in[ui])
          continue;
        if (g.nodes[ui].verifier == player) {
          in[ui] = true;
          strategy[ui] = v;
          queue.push_back(u);
        } else if (--pending[ui] == 0) {
          in[ui] = true;
          queue.push_back(u);
        }
      }
    }
    return in;
  }

  void solve(const std::vector<bool>& alive) {
    size_t n = g.nodes.size();
    int top = -1;
    for (size_t v = 0; v < n; ++v)
      if (alive[v] && g.nodes[v].priority > top)
        top = g.nodes[v].priority;
    if (top < 0)
      return;  // empty subgame
    bool player = (top % 2 == 0);  // verifier wins even priorities

    std::vector<bool> targets(n, false);
    for (size_t v = 0; v < n; ++v)
      targets[v] = alive[v] && g.nodes[v].priority == top;

    std::vector<bool> region = attract(player, targets, alive);
    std::vector<bool> rest(n, false);
    bool rest_nonempty = false;
    for (size_t v = 0; v < n; ++v) {
      rest[v] = alive[v] && !region[v];
      rest_nonempty = rest_nonempty || rest[v];
    }
    if (rest_nonempty)
      solve(rest);

    std::vector<bool> opp_region(n, false);
    bool opponent_wins_some = false;
    for (size_t v = 0; v < n; ++v) {
      if (rest[v] && win_verifier[v] != player) {
        opp_region[v] = true;
        opponent_wins_some = true;
      }
    }

    if (!opponent_wins_some) {
      // `player` wins the whole subgame. Attractor edges cover player
      // nodes drawn toward the top-priority set; top-priority player
      // nodes may take any alive successor; the recursive call covered
      // the rest.
      for (size_t v = 0; v < n; ++v) {
        if (!alive[v])
          continue;
        win_verifier[v] = player;
        if (targets[v] && g.nodes[v].verifier == player) {
          for (int s : g.nodes[v].succ)
            if (alive[static_cast<size_t>(s)]) {
              strategy[v] = s;
              break;
            }
        }
      }
      return;
    }

    // The opponent's subgame win extends through their attractor; solve
    // the remainder from scratch. Opponent strategies inside the attracted
    // block: subgame strategies on the core, attractor edges outside it.
    std::vector<bool> opp_attr = attract(!player, opp_region, alive);
    std::vector<bool> remainder(n, false);
    bool rem_nonempty = false;
    for (size_t v = 0; v < n; ++v) {
      remainder[v] = alive[v] && !opp_attr[v];
      rem_nonempty = rem_nonempty || remainder[v];
      if (opp_attr[v])
        win_verifier[v] = !player;
    }
    if (rem_nonempty)
      solve(remainder);
  }
};

}  // namespace

ParitySolution solve_parity(const ParityGame& game) {
  size_t n = game.nodes.size();
  if (n == 0)
    throw std::invalid_argument("solve_parity: empty game");
  for (const auto& node : game.nodes) {
    if (node.succ.empty())
      throw std::invalid_argument("solve_parity: node without successors");
    for (int s : node.succ)
      if (s < 0 || s >= static_cast<int>(n))
        throw std::invalid_argument("solve_parity: edge out of range");
    if (node.priority < 0)
      throw std::invalid_argument("solve_parity: negative priority");
  }
  Solver solver(game);
  std::vector<bool> alive(n, true);
  solver.solve(alive);

  // Strategy entries at nodes the owner loses are stale sub-computation
  // leftovers; only the winner's moves are part of the contract.
  for (size_t v = 0; v < n; ++v)
    if (game.nodes[v].verifier != solver.win_verifier[v])
      solver.strategy[v] = -1;

  return ParitySolution{std::move(solver.win_verifier), std::move(solver.strategy)};
}

}  // namespace sld
