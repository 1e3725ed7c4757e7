#ifndef LASTLOC_GAME_HPP
#define LASTLOC_GAME_HPP

#include <map>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lastloc/base.hpp"

namespace lastloc {

// Hard ceilings for the exhaustive analyses. Overridable from the CLI,
// but the defaults mark where each method stops being near-instant.
struct EnumLimits {
  int perm_sweep = 8;  // full n! sweeps
  int state_dfs = 12;  // reachable-state walks (order-oblivious only)
  int entropy = 10;    // exhaustive metric accumulation
};

struct ExecConfig {
  EnumLimits limits;
  int threads = 1;  // permutation sweeps only; everything else is serial
};

// The writer. Called once per arrival except the last (the final cell is
// forced). history holds the earlier arrivals in order; strategies that
// declare order obliviousness must not read it.
class AliceStrategy {
 public:
  virtual ~AliceStrategy() = default;
  virtual Symbol write(const CellArray& v, Location loc,
                       std::span<const Location> history) const = 0;
};

class BobDecoder {
 public:
  virtual ~BobDecoder() = default;
  // v is complete; the result must contain the last written location.
  virtual std::vector<Location> decode(const CellArray& v) const = 0;
};

struct Protocol {
  std::string name;
  int n = 0;
  int w = 2;
  bool order_oblivious = false;
  bool assignment_oblivious = false;
  std::shared_ptr<const AliceStrategy> alice;
  std::shared_ptr<const BobDecoder> bob;  // null: only the canonical decoder applies
  nlohmann::json params;                  // construction parameters, for reports
};

struct GameRunRecord {
  Permutation sigma;
  Symbol final_symbol;
  std::vector<std::pair<Location, Symbol>> transcript;  // all n writes in order
  CellArray edge;         // array after n-1 steps; the star marks sigma_n
  CellArray final_array;  // edge with the forced symbol filled in
  bool has_bob = false;
  bool bob_ok = false;    // decoder returned a valid set containing sigma_n
  std::string bob_error;  // exception text when the decoder threw
  std::vector<Location> bob_output;
};

GameRunRecord run_protocol(const Protocol& p, const Permutation& sigma, Symbol b);

// The set of arrays Alice can leave after n-1 steps (one star each),
// plus per-completion degrees: a complete array's degree counts the
// stored star arrays it completes, and the maximum degree over complete
// arrays is the protocol's cost under the canonical decoder.
class EdgeGraph {
 public:
  EdgeGraph(int n, int w);

  int n() const { return n_; }
  int w() const { return w_; }

  void add_edge(std::uint64_t packed_star_array);
  void merge(const EdgeGraph& other);
  void finalize();
  bool finalized() const { return finalized_; }

  bool contains(std::uint64_t packed_star_array) const { return edges_.count(packed_star_array) != 0; }
  const std::unordered_set<std::uint64_t>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  int max_degree() const;
  int vertex_degree(std::uint64_t packed_complete_array) const;
  std::map<int, std::size_t> degree_histogram() const;  // degree -> vertex count

 private:
  int n_;
  int w_;
  bool finalized_ = false;
  int max_degree_ = 0;
  std::unordered_set<std::uint64_t> edges_;
  std::unordered_map<std::uint64_t, int> degree_;
};

enum class EnumMode { kAuto, kPermSweep, kStateDfs };

// Full edge-set computation. The permutation sweep replays every order
// and works for any protocol up to limits.perm_sweep; the state walk
// follows reachable partial arrays instead and is exact precisely when
// the writer is order-oblivious, reaching limits.state_dfs. kAuto picks
// the walk when it is sound, the sweep otherwise.
EdgeGraph enumerate_edge_graph(const Protocol& p, const ExecConfig& cfg = {},
                               EnumMode mode = EnumMode::kAuto);

// Star position / completion arithmetic on packed one-star arrays.
Location packed_star_location(std::uint64_t key, int n);
std::uint64_t packed_complete(std::uint64_t key, int n, Symbol s);

// Edge multiset over all n! orders: packed edge -> number of orders that
// produce it. Basis for the exact metrics. cap_n names the limit whose
// budget the caller is spending (sweep or metric cap).
std::unordered_map<std::uint64_t, std::uint64_t> sweep_edge_multiplicities(
    const Protocol& p, const ExecConfig& cfg, int cap_n);

// Locations whose starred version of v is a stored edge. Empty means v
// cannot arise as a final array of the protocol.
std::vector<Location> canonical_bob(const EdgeGraph& graph, const CellArray& v);

// Max canonical output size = max vertex degree.
int cost(const EdgeGraph& graph);

// All packed partial arrays (0 to n-1 cells filled) the order-oblivious
// writer can reach, the empty array included.
std::unordered_set<std::uint64_t> reachable_states(const Protocol& p, const ExecConfig& cfg = {});

// True iff some arrival order makes the order-oblivious writer produce
// this one-star array. Walks subsets of the filled cells, so it stays
// usable past the n of full enumeration.
bool edge_reachable(const Protocol& p, const CellArray& star_array);

// Degree of a complete array established by n edge_reachable queries,
// independent of any enumerated graph.
int verified_vertex_degree(const Protocol& p, const CellArray& v);

// Memoizing front end for an order-oblivious writer; keys pack the array
// and the arriving location together, which caps it at n <= 14. Not for
// concurrent use.
class CachedObliviousWriter {
 public:
  explicit CachedObliviousWriter(const Protocol& p);
  Symbol write(const CellArray& v, Location loc) const;

 private:
  std::shared_ptr<const AliceStrategy> alice_;
  int n_;
  mutable std::unordered_map<std::uint64_t, Symbol> memo_;
};

struct Fraction {
  long long num = 0;
  long long den = 1;

  void normalize();
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct ExpectedCostResult {
  Fraction exact;          // meaningful iff exhaustive
  double estimate = 0.0;
  bool exhaustive = false;
  std::uint64_t samples = 0;  // (sigma, b) pairs covered or drawn
};

// Mean canonical output size under uniform sigma and uniform final
// symbol. Exhaustive: one sweep with per-edge multiplicities, exact
// rational, n capped by limits.perm_sweep. Monte Carlo: seeded draws,
// serial by design; still needs the edge graph, so the protocol must be
// enumerable (order-oblivious for the walk, or small enough to sweep).
ExpectedCostResult expected_cost(const Protocol& p, const ExecConfig& cfg = {});
ExpectedCostResult expected_cost_mc(const Protocol& p, std::uint64_t trials,
                                    std::uint64_t seed, const ExecConfig& cfg = {});

struct EntropyResult {
  double bits = 0.0;
  bool exhaustive = false;
  bool plugin_biased = false;  // MC plug-in estimate, biased low for rare arrays
  std::uint64_t samples = 0;
  std::size_t distinct_arrays = 0;
};

// Conditional entropy (bits) of the last location given the final array,
// uniform over (sigma, b). Exhaustive mode is exact and capped by
// limits.entropy; the Monte Carlo estimate is the plug-in value over the
// sampled joint and needs no enumeration at all.
EntropyResult conditional_entropy(const Protocol& p, const ExecConfig& cfg = {});
EntropyResult conditional_entropy_mc(const Protocol& p, std::uint64_t trials, std::uint64_t seed);

}  // namespace lastloc

#endif  // LASTLOC_GAME_HPP
