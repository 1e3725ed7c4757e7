#include <set>
#include <unordered_map>
#include <unordered_set>

#include "lastloc/theory.hpp"

namespace lastloc::theory {

namespace {

// One candidate order-oblivious binary protocol, held as partial
// decisions: (packed array << 5 | location) -> symbol written there.
struct Search {
  int n;
  int budget;
  std::uint64_t nodes = 0;
  std::unordered_map<std::uint64_t, Symbol> decisions;

  struct Walk {
    bool over_budget = false;
    bool has_branch = false;
    std::uint64_t branch_state = 0;
    Location branch_loc = 0;
  };

  // Expands everything reachable under the current decisions, states in
  // ascending packed order, stars in ascending location order. Records
  // the first undecided (state, location) and prunes once any vertex
  // degree exceeds the budget; later decisions can only add edges, so
  // the prune is sound.
  Walk explore() {
    Walk walk;
    std::set<std::uint64_t> pending{0};
    std::unordered_set<std::uint64_t> seen{0};
    std::unordered_map<std::uint64_t, int> degree;
    while (!pending.empty()) {
      const std::uint64_t key = *pending.begin();
      pending.erase(pending.begin());
      const CellArray v = CellArray::unpack(key, n, 2);
      if (v.filled() == n - 1) {
        for (Symbol s = 1; s <= 2; ++s) {
          if (++degree[packed_complete(key, n, s)] > budget) {
            walk.over_budget = true;
            return walk;
          }
        }
        continue;
      }
      for (Location l : v.star_locations()) {
        const std::uint64_t decision_key = (key << 5) | static_cast<std::uint64_t>(l);
        const auto it = decisions.find(decision_key);
        if (it == decisions.end()) {
          if (!walk.has_branch) {
            walk.has_branch = true;
            walk.branch_state = key;
            walk.branch_loc = l;
          }
          continue;
        }
        const std::uint64_t child =
            key | (static_cast<std::uint64_t>(it->second) << (4 * (l - 1)));
        if (seen.insert(child).second) pending.insert(child);
      }
    }
    return walk;
  }

  bool feasible() {
    ++nodes;
    const Walk walk = explore();
    if (walk.over_budget) return false;
    if (!walk.has_branch) return true;
    const std::uint64_t decision_key =
        (walk.branch_state << 5) | static_cast<std::uint64_t>(walk.branch_loc);
    for (Symbol s = 1; s <= 2; ++s) {
      decisions[decision_key] = s;
      if (feasible()) return true;
    }
    decisions.erase(decision_key);
    return false;
  }
};

}  // namespace

bool solver_feasible(int n, int budget, std::uint64_t* nodes) {
  if (n < 1 || n > 4) throw ValidationError("solver: needs 1 <= n <= 4");
  if (budget < 1) throw ValidationError("solver: budget must be positive");
  Search search{n, budget};
  const bool ok = search.feasible();
  if (nodes) *nodes += search.nodes;
  return ok;
}

SolverResult solve_min_cost(int n) {
  if (n < 1 || n > 4) throw ValidationError("solver: needs 1 <= n <= 4");
  SolverResult result;
  result.n = n;
  result.cost = 0;
  for (int c = 1; c <= n; ++c) {
    const bool ok = solver_feasible(n, c, &result.nodes);
    result.feasible_budgets.push_back(ok ? 1 : 0);
    if (ok && result.cost == 0) result.cost = c;
  }
  if (result.cost == 0) {
    throw ContractError("solver: no budget up to n was feasible");
  }
  return result;
}

}  // namespace lastloc::theory
