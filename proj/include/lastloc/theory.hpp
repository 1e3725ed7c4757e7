#ifndef LASTLOC_THEORY_HPP
#define LASTLOC_THEORY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lastloc/game.hpp"

namespace lastloc::theory {

struct Verification {
  bool ok = true;
  std::string detail;  // first violation, empty when ok
};

// Replays every permutation and checks that the write at a given
// (partial array, location) never depends on the arrival order. n <= 8.
Verification verify_order_oblivious(const Protocol& p);

// Same sweep keyed by (arrived set, location) instead. n <= 8.
Verification verify_assignment_oblivious(const Protocol& p);

// Wraps the writer so that each write replays the lexicographically
// smallest arrival order consistent with the board and answers as the
// original would. The result is order-oblivious and its edge set is
// contained in the original's. n <= 8; the wrapped protocol carries no
// decoder of its own.
Protocol order_oblivious_convert(const Protocol& p);

// Order-sensitive writers for exercising the conversion. The first
// writes 1 exactly when the preceding arrival had a smaller index; the
// second hashes the arrival history.
Protocol prev_smaller_probe(int n);
Protocol seeded_probe(int n, std::uint64_t seed);

struct MonotoneReport {
  bool monotone = true;
  std::size_t states = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t skipped = 0;  // writer threw on a reachable query
  std::string alpha;          // violating pair, empty when monotone
  std::string beta;
  Location location = 0;
};

// Checks that each location's write rule is monotone under extension:
// filling in more of the board never turns a 1 into a 0. The domain is
// the reachable partial arrays. Order-oblivious binary protocols, n <= 9.
MonotoneReport check_monotone(const Protocol& p);

// sigma with the element k moved to the end, relative order kept.
Permutation bump(const Permutation& sigma, Location k);
// sigma with the elements k and sigma_n exchanging positions.
Permutation swap_last(const Permutation& sigma, Location k);

struct WitnessVertex {
  std::string vertex;  // rendered complete array
  int claimed = 0;     // degree the construction promises
  int verified = 0;    // degree re-established by edge-membership queries
};

struct WitnessReport {
  std::string protocol;
  std::string kind;  // "monotone" or "assignment"
  int n = 0;
  std::vector<Location> sigma;
  std::vector<WitnessVertex> vertices;
  int bound = 0;          // the degree the theorem guarantees
  bool verified = false;  // every claim re-checked and the bound met
  nlohmann::json details;
};

// Lower-bound witness for monotone protocols: locates the permutation
// with lexicographically minimal arrival word (full search at n <= 6,
// bump-to-fixpoint beyond, falling back to full search if the shape
// check fails), then derives the two high-degree vertices x and y whose
// better degree is at least floor(sqrt(n)). Rejects non-monotone input.
// n <= 9.
WitnessReport monotone_witness(const Protocol& p);

// Lower-bound witness for assignment-oblivious protocols: builds the
// suffix of sigma greedily through the halving sets, verifies that
// swap_last(sigma, k) collides with sigma for every placed k, and
// reports the collision vertex, re-verified, of degree at least
// ceil(log2 n)/2. n <= 16.
WitnessReport assignment_oblivious_witness(const Protocol& p);

struct SolverResult {
  int n = 0;
  int cost = 0;                       // least feasible budget
  std::vector<int> feasible_budgets;  // entry c-1: is budget c feasible
  std::uint64_t nodes = 0;            // search-tree nodes across all budgets
};

// Whether some order-oblivious binary protocol on n cells keeps every
// vertex degree at most budget. Backtracking over the reachable
// decision points in deterministic order. n <= 4.
bool solver_feasible(int n, int budget, std::uint64_t* nodes = nullptr);

// The exact optimal cost, by trying budgets 1..n.
SolverResult solve_min_cost(int n);

}  // namespace lastloc::theory

#endif  // LASTLOC_THEORY_HPP
