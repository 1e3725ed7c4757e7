#include "lastloc/game.hpp"

#include <algorithm>
#include <exception>
#include <thread>

namespace lastloc {

namespace {

Symbol checked_write(const Protocol& p, const CellArray& v, Location loc,
                     std::span<const Location> history) {
  const Symbol s = p.alice->write(v, loc, history);
  if (s == kStar || s > p.w) {
    throw ContractError("writer produced a symbol outside the alphabet");
  }
  return s;
}

// Array after the first n-1 writes of this order, packed.
std::uint64_t simulate_edge(const Protocol& p, const std::vector<Location>& order) {
  CellArray v(p.n, p.w);
  std::vector<Location> history;
  history.reserve(order.size());
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const Location loc = order[i];
    v.set(loc, checked_write(p, v, loc, history));
    history.push_back(loc);
  }
  return v.packed();
}

void validate_protocol(const Protocol& p) {
  if (!p.alice) throw ValidationError("protocol has no writer");
  if (p.n < 1) throw ValidationError("protocol has no cells");
  if (p.w < 2) throw ValidationError("protocol alphabet needs w >= 2");
}

}  // namespace

GameRunRecord run_protocol(const Protocol& p, const Permutation& sigma, Symbol b) {
  validate_protocol(p);
  if (sigma.n() != p.n) throw ValidationError("order length does not match the protocol");
  sigma.validate();
  if (b == kStar || b > p.w) throw ValidationError("final symbol outside the alphabet");

  CellArray v(p.n, p.w);
  std::vector<std::pair<Location, Symbol>> transcript;
  transcript.reserve(static_cast<std::size_t>(p.n));
  std::vector<Location> history;
  history.reserve(static_cast<std::size_t>(p.n));
  for (int i = 0; i + 1 < p.n; ++i) {
    const Location loc = sigma.order[static_cast<std::size_t>(i)];
    const Symbol s = checked_write(p, v, loc, history);
    v.set(loc, s);
    history.push_back(loc);
    transcript.emplace_back(loc, s);
  }
  CellArray edge = v;
  const Location last = sigma.last();
  v.set(last, b);
  transcript.emplace_back(last, b);

  GameRunRecord rec{sigma, b, std::move(transcript), std::move(edge), std::move(v),
                    false,  false, {},              {}};
  if (p.bob) {
    rec.has_bob = true;
    try {
      rec.bob_output = p.bob->decode(rec.final_array);
      rec.bob_ok = !rec.bob_output.empty() &&
                   std::find(rec.bob_output.begin(), rec.bob_output.end(), last) !=
                       rec.bob_output.end();
      for (Location l : rec.bob_output) {
        if (l < 1 || l > p.n) rec.bob_ok = false;
      }
      if (!rec.bob_ok && rec.bob_error.empty()) {
        rec.bob_error = "output misses the last location";
      }
    } catch (const std::exception& e) {
      rec.bob_ok = false;
      rec.bob_error = e.what();
    }
  }
  return rec;
}

EdgeGraph::EdgeGraph(int n, int w) : n_(n), w_(w) {
  if (n < 1 || n > 16) throw ValidationError("EdgeGraph: needs 1 <= n <= 16");
  if (w < 2 || w > 15) throw ValidationError("EdgeGraph: needs 2 <= w <= 15");
}

void EdgeGraph::add_edge(std::uint64_t key) {
  if (finalized_) throw ContractError("EdgeGraph: edge added after finalize");
  int stars = 0;
  for (int i = 0; i < n_; ++i) {
    if (((key >> (4 * i)) & 0xF) == 0) ++stars;
  }
  if (stars != 1) throw ValidationError("EdgeGraph: edges carry exactly one star");
  edges_.insert(key);
}

void EdgeGraph::merge(const EdgeGraph& other) {
  if (finalized_) throw ContractError("EdgeGraph: merge after finalize");
  if (other.n_ != n_ || other.w_ != w_) throw ValidationError("EdgeGraph: shape mismatch");
  edges_.insert(other.edges_.begin(), other.edges_.end());
}

void EdgeGraph::finalize() {
  if (finalized_) return;
  for (std::uint64_t key : edges_) {
    for (Symbol s = 1; s <= w_; ++s) {
      const int d = ++degree_[packed_complete(key, n_, s)];
      max_degree_ = std::max(max_degree_, d);
    }
  }
  finalized_ = true;
}

int EdgeGraph::max_degree() const {
  if (!finalized_) throw ContractError("EdgeGraph: degrees need finalize()");
  return max_degree_;
}

int EdgeGraph::vertex_degree(std::uint64_t key) const {
  if (!finalized_) throw ContractError("EdgeGraph: degrees need finalize()");
  const auto it = degree_.find(key);
  return it == degree_.end() ? 0 : it->second;
}

std::map<int, std::size_t> EdgeGraph::degree_histogram() const {
  if (!finalized_) throw ContractError("EdgeGraph: degrees need finalize()");
  std::map<int, std::size_t> hist;
  for (const auto& [key, deg] : degree_) {
    (void)key;
    ++hist[deg];
  }
  return hist;
}

Location packed_star_location(std::uint64_t key, int n) {
  for (int i = 0; i < n; ++i) {
    if (((key >> (4 * i)) & 0xF) == 0) return i + 1;
  }
  throw ValidationError("packed array has no star");
}

std::uint64_t packed_complete(std::uint64_t key, int n, Symbol s) {
  const Location star = packed_star_location(key, n);
  return key | (static_cast<std::uint64_t>(s) << (4 * (star - 1)));
}

std::unordered_map<std::uint64_t, std::uint64_t> sweep_edge_multiplicities(
    const Protocol& p, const ExecConfig& cfg, int cap_n) {
  validate_protocol(p);
  if (p.n > cap_n) {
    throw ValidationError("permutation sweep capped at n = " + std::to_string(cap_n) +
                          "; raise the limit explicitly to go past it");
  }
  if (p.n > 16) throw ValidationError("packed arrays cap sweeps at n = 16");

  const int threads = std::max(1, std::min(cfg.threads, p.n));
  std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> partial(
      static_cast<std::size_t>(threads));
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(threads));

  // Shard by first element; each shard walks (n-1)! suffix orders. Counts
  // merge by addition, so the shard split never shows in the result.
  auto worker = [&](int shard) {
    try {
      auto& local = partial[static_cast<std::size_t>(shard)];
      std::vector<Location> order(static_cast<std::size_t>(p.n));
      for (Location first = 1; first <= p.n; ++first) {
        if ((first - 1) % threads != shard) continue;
        std::vector<Location> rest;
        for (Location l = 1; l <= p.n; ++l) {
          if (l != first) rest.push_back(l);
        }
        do {
          order[0] = first;
          std::copy(rest.begin(), rest.end(), order.begin() + 1);
          ++local[simulate_edge(p, order)];
        } while (std::next_permutation(rest.begin(), rest.end()));
      }
    } catch (...) {
      failures[static_cast<std::size_t>(shard)] = std::current_exception();
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker, k);
    for (auto& t : pool) t.join();
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  for (auto& local : partial) {
    for (const auto& [key, c] : local) counts[key] += c;
  }
  return counts;
}

std::unordered_set<std::uint64_t> reachable_states(const Protocol& p, const ExecConfig& cfg) {
  validate_protocol(p);
  if (!p.order_oblivious) {
    throw ValidationError("state enumeration is sound only for order-oblivious writers");
  }
  if (p.n > cfg.limits.state_dfs) {
    throw ValidationError("state enumeration capped at n = " +
                          std::to_string(cfg.limits.state_dfs));
  }
  if (p.n > 16) throw ValidationError("packed arrays cap state walks at n = 16");

  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> frontier;
  const CellArray empty(p.n, p.w);
  seen.insert(empty.packed());
  frontier.push_back(empty.packed());
  while (!frontier.empty()) {
    const std::uint64_t key = frontier.back();
    frontier.pop_back();
    const CellArray state = CellArray::unpack(key, p.n, p.w);
    if (state.filled() >= p.n - 1) continue;  // the final cell is forced, not written
    for (Location loc : state.star_locations()) {
      const Symbol s = checked_write(p, state, loc, {});
      const std::uint64_t child = state.with(loc, s).packed();
      if (seen.insert(child).second) frontier.push_back(child);
    }
  }
  return seen;
}

EdgeGraph enumerate_edge_graph(const Protocol& p, const ExecConfig& cfg, EnumMode mode) {
  validate_protocol(p);
  if (mode == EnumMode::kAuto) {
    mode = (p.order_oblivious && p.n <= cfg.limits.state_dfs) ? EnumMode::kStateDfs
                                                              : EnumMode::kPermSweep;
  }
  EdgeGraph graph(p.n, p.w);
  if (mode == EnumMode::kStateDfs) {
    for (std::uint64_t key : reachable_states(p, cfg)) {
      if (CellArray::unpack(key, p.n, p.w).filled() == p.n - 1) graph.add_edge(key);
    }
  } else {
    for (const auto& [key, count] : sweep_edge_multiplicities(p, cfg, cfg.limits.perm_sweep)) {
      (void)count;
      graph.add_edge(key);
    }
  }
  graph.finalize();
  return graph;
}

std::vector<Location> canonical_bob(const EdgeGraph& graph, const CellArray& v) {
  if (v.n() != graph.n() || v.w() != graph.w()) {
    throw ValidationError("canonical_bob: array does not match the graph");
  }
  if (!v.is_complete()) throw ValidationError("canonical_bob: array must be complete");
  const std::uint64_t key = v.packed();
  std::vector<Location> out;
  for (Location l = 1; l <= v.n(); ++l) {
    const std::uint64_t starred = key & ~(std::uint64_t{0xF} << (4 * (l - 1)));
    if (graph.contains(starred)) out.push_back(l);
  }
  return out;
}

int cost(const EdgeGraph& graph) {
  return graph.max_degree();
}

bool edge_reachable(const Protocol& p, const CellArray& star_array) {
  validate_protocol(p);
  if (!p.order_oblivious) {
    throw ValidationError("edge_reachable needs an order-oblivious writer");
  }
  if (star_array.n() != p.n || star_array.w() != p.w) {
    throw ValidationError("edge_reachable: array does not match the protocol");
  }
  if (star_array.star_count() != 1) {
    throw ValidationError("edge_reachable: expected exactly one star");
  }
  if (p.n > 16) throw ValidationError("edge_reachable capped at n = 16");

  std::vector<Location> assigned;
  for (Location l = 1; l <= p.n; ++l) {
    if (!star_array.starred(l)) assigned.push_back(l);
  }
  const int count = static_cast<int>(assigned.size());

  // mask over `assigned`: which cells are already written, values agreeing
  // with the target. Obliviousness makes the partial array a function of
  // the mask alone, so reachability memoizes on it.
  std::vector<signed char> memo(std::size_t{1} << count, -1);
  memo[0] = 1;
  auto reach = [&](auto&& self, std::uint32_t mask) -> bool {
    if (memo[mask] >= 0) return memo[mask] != 0;
    bool ok = false;
    for (int i = 0; i < count && !ok; ++i) {
      const std::uint32_t bit = std::uint32_t{1} << i;
      if (!(mask & bit)) continue;
      if (!self(self, mask ^ bit)) continue;
      CellArray parent(p.n, p.w);
      for (int k = 0; k < count; ++k) {
        if ((mask ^ bit) & (std::uint32_t{1} << k)) {
          parent.set(assigned[static_cast<std::size_t>(k)],
                     star_array.at(assigned[static_cast<std::size_t>(k)]));
        }
      }
      const Location loc = assigned[static_cast<std::size_t>(i)];
      ok = checked_write(p, parent, loc, {}) == star_array.at(loc);
    }
    memo[mask] = ok ? 1 : 0;
    return ok;
  };
  return reach(reach, (std::uint32_t{1} << count) - 1);
}

int verified_vertex_degree(const Protocol& p, const CellArray& v) {
  if (!v.is_complete()) throw ValidationError("verified_vertex_degree: array must be complete");
  int degree = 0;
  for (Location l = 1; l <= v.n(); ++l) {
    CellArray star(v.n(), v.w());
    for (Location k = 1; k <= v.n(); ++k) {
      if (k != l) star.set(k, v.at(k));
    }
    if (edge_reachable(p, star)) ++degree;
  }
  return degree;
}

CachedObliviousWriter::CachedObliviousWriter(const Protocol& p)
    : alice_(p.alice), n_(p.n) {
  validate_protocol(p);
  if (!p.order_oblivious) {
    throw ValidationError("CachedObliviousWriter needs an order-oblivious writer");
  }
  if (p.n > 14) throw ValidationError("CachedObliviousWriter: key packing caps n at 14");
}

Symbol CachedObliviousWriter::write(const CellArray& v, Location loc) const {
  const std::uint64_t key = (v.packed() << 5) | static_cast<std::uint64_t>(loc);
  const auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const Symbol s = alice_->write(v, loc, {});
  memo_.emplace(key, s);
  return s;
}

}  // namespace lastloc
