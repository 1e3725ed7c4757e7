#include "lastloc/theory.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace lastloc::theory {

namespace {

void check_sweep_size(const Protocol& p, const char* what) {
  if (p.n < 1 || p.n > 8) {
    throw ValidationError(std::string(what) + ": full permutation replay needs n <= 8");
  }
}

template <typename KeyFn>
Verification sweep_consistency(const Protocol& p, KeyFn key_of, const char* label) {
  std::unordered_map<std::uint64_t, Symbol> seen;
  std::vector<Location> order(static_cast<std::size_t>(p.n));
  std::iota(order.begin(), order.end(), 1);
  do {
    CellArray board(p.n, p.w);
    std::vector<Location> history;
    std::uint64_t arrived = 0;
    for (int i = 0; i + 1 < p.n; ++i) {
      const Location loc = order[static_cast<std::size_t>(i)];
      const Symbol s = p.alice->write(board, loc, history);
      const std::uint64_t key = key_of(board, arrived, loc);
      auto [it, inserted] = seen.try_emplace(key, s);
      if (!inserted && it->second != s) {
        return {false, std::string(label) + " at " + board.render() + " location " +
                           std::to_string(loc) + ": writes " + std::to_string(int{it->second}) +
                           " and " + std::to_string(int{s}) + " depending on order"};
      }
      board.set(loc, s);
      history.push_back(loc);
      arrived |= std::uint64_t{1} << (loc - 1);
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return {true, ""};
}

}  // namespace

Verification verify_order_oblivious(const Protocol& p) {
  check_sweep_size(p, "verify_order_oblivious");
  return sweep_consistency(
      p,
      [](const CellArray& board, std::uint64_t, Location loc) {
        return (board.packed() << 5) | static_cast<std::uint64_t>(loc);
      },
      "array");
}

Verification verify_assignment_oblivious(const Protocol& p) {
  check_sweep_size(p, "verify_assignment_oblivious");
  return sweep_consistency(
      p,
      [](const CellArray&, std::uint64_t arrived, Location loc) {
        return (arrived << 5) | static_cast<std::uint64_t>(loc);
      },
      "arrived set");
}

namespace {

class ConvertedAlice : public AliceStrategy {
 public:
  ConvertedAlice(std::shared_ptr<const AliceStrategy> inner, int n, int w)
      : inner_(std::move(inner)), n_(n), w_(w) {}

  Symbol write(const CellArray& v, Location loc, std::span<const Location>) const override {
    std::vector<Location> assigned;
    for (Location l = 1; l <= n_; ++l) {
      if (!v.starred(l)) assigned.push_back(l);
    }
    // First consistent order in lexicographic order; every order the
    // wrapped writer can itself produce has one, so on-path this finds it.
    std::vector<Location> order = assigned;
    do {
      CellArray board(n_, w_);
      std::vector<Location> history;
      bool consistent = true;
      for (Location a : order) {
        Symbol s;
        try {
          s = inner_->write(board, a, history);
          board.set(a, s);
        } catch (const std::exception&) {
          consistent = false;
          break;
        }
        if (s != v.at(a)) {
          consistent = false;
          break;
        }
        history.push_back(a);
      }
      if (consistent) return inner_->write(board, loc, history);
    } while (std::next_permutation(order.begin(), order.end()));
    throw ContractError("no arrival order reproduces this board");
  }

 private:
  std::shared_ptr<const AliceStrategy> inner_;
  int n_;
  int w_;
};

}  // namespace

Protocol order_oblivious_convert(const Protocol& p) {
  check_sweep_size(p, "order_oblivious_convert");
  Protocol out;
  out.name = p.name + "_oo";
  out.n = p.n;
  out.w = p.w;
  out.order_oblivious = true;
  out.assignment_oblivious = false;
  out.alice = std::make_shared<ConvertedAlice>(p.alice, p.n, p.w);
  out.bob = nullptr;  // the original decoder's guarantees do not carry over
  out.params = {{"n", p.n}, {"converted_from", p.name}, {"inner", p.params}};
  return out;
}

namespace {

class PrevSmallerAlice : public AliceStrategy {
 public:
  Symbol write(const CellArray&, Location loc, std::span<const Location> history) const override {
    return (!history.empty() && history.back() < loc) ? 2 : 1;
  }
};

class SeededOrderAlice : public AliceStrategy {
 public:
  explicit SeededOrderAlice(std::uint64_t seed) : seed_(seed) {}

  Symbol write(const CellArray&, Location loc, std::span<const Location> history) const override {
    std::uint64_t h = seed_;
    for (Location a : history) h = Rng::mix_seed(h, static_cast<std::uint64_t>(a));
    h = Rng::mix_seed(h, 0x10000u + static_cast<std::uint64_t>(loc));
    return static_cast<Symbol>((h & 1) + 1);
  }

 private:
  std::uint64_t seed_;
};

}  // namespace

Protocol prev_smaller_probe(int n) {
  if (n < 1) throw ValidationError("prev_smaller_probe: n must be at least 1");
  Protocol p;
  p.name = "prev_smaller";
  p.n = n;
  p.w = 2;
  p.order_oblivious = false;
  p.assignment_oblivious = false;
  p.alice = std::make_shared<PrevSmallerAlice>();
  p.params = {{"n", n}};
  return p;
}

Protocol seeded_probe(int n, std::uint64_t seed) {
  if (n < 1) throw ValidationError("seeded_probe: n must be at least 1");
  Protocol p;
  p.name = "seeded_probe";
  p.n = n;
  p.w = 2;
  p.order_oblivious = false;
  p.assignment_oblivious = false;
  p.alice = std::make_shared<SeededOrderAlice>(seed);
  p.params = {{"n", n}, {"seed", seed}};
  return p;
}

namespace {

// True iff super agrees with sub on every cell sub has filled.
bool extends(std::uint64_t sub, std::uint64_t super, int n) {
  for (int i = 0; i < n; ++i) {
    const std::uint64_t cell = (sub >> (4 * i)) & 0xF;
    if (cell != 0 && ((super >> (4 * i)) & 0xF) != cell) return false;
  }
  return true;
}

}  // namespace

MonotoneReport check_monotone(const Protocol& p) {
  if (!p.order_oblivious) {
    throw ValidationError("check_monotone: the write rule must be order-oblivious");
  }
  if (p.w != 2) throw ValidationError("check_monotone: binary alphabets only");
  if (p.n > 9) throw ValidationError("check_monotone: needs n <= 9");

  auto state_set = reachable_states(p);
  std::vector<std::uint64_t> states(state_set.begin(), state_set.end());
  std::sort(states.begin(), states.end());
  CachedObliviousWriter writer(p);

  MonotoneReport report;
  report.states = states.size();
  std::vector<CellArray> arrays;
  arrays.reserve(states.size());
  for (std::uint64_t key : states) arrays.push_back(CellArray::unpack(key, p.n, p.w));

  for (std::size_t a = 0; a < states.size(); ++a) {
    for (std::size_t b = 0; b < states.size(); ++b) {
      if (a == b || !extends(states[a], states[b], p.n)) continue;
      for (Location l = 1; l <= p.n; ++l) {
        if (!arrays[b].starred(l)) continue;  // stars of b are stars of a too
        Symbol low;
        Symbol high;
        try {
          low = writer.write(arrays[a], l);
          high = writer.write(arrays[b], l);
        } catch (const std::exception&) {
          ++report.skipped;
          continue;
        }
        ++report.pairs_checked;
        if (high < low) {
          report.monotone = false;
          report.alpha = arrays[a].render();
          report.beta = arrays[b].render();
          report.location = l;
          return report;
        }
      }
    }
  }
  return report;
}

Permutation bump(const Permutation& sigma, Location k) {
  std::vector<Location> out;
  out.reserve(sigma.order.size());
  bool found = false;
  for (Location l : sigma.order) {
    if (l == k) {
      found = true;
    } else {
      out.push_back(l);
    }
  }
  if (!found) throw ValidationError("bump: element not in the permutation");
  out.push_back(k);
  return {out};
}

Permutation swap_last(const Permutation& sigma, Location k) {
  auto out = sigma.order;
  if (out.empty()) throw ValidationError("swap_last: empty permutation");
  auto it = std::find(out.begin(), out.end(), k);
  if (it == out.end()) throw ValidationError("swap_last: element not in the permutation");
  std::swap(*it, out.back());
  return {out};
}

namespace {

// Bits written in arrival order over the first n-1 steps.
std::vector<int> arrival_word(const CachedObliviousWriter& writer, const Permutation& sigma,
                              int n, CellArray* edge_out = nullptr) {
  CellArray board(n, 2);
  std::vector<int> word;
  word.reserve(static_cast<std::size_t>(n) - 1);
  for (int i = 0; i + 1 < n; ++i) {
    const Location loc = sigma.order[static_cast<std::size_t>(i)];
    const Symbol s = writer.write(board, loc);
    board.set(loc, s);
    word.push_back(symbol_to_bit(s));
  }
  if (edge_out) *edge_out = board;
  return word;
}

Permutation lex_min_word_search(const CachedObliviousWriter& writer, int n,
                                std::vector<int>* best_word) {
  Permutation best = Permutation::identity(n);
  std::vector<int> best_w = arrival_word(writer, best, n);
  std::vector<Location> order = best.order;
  while (std::next_permutation(order.begin(), order.end())) {
    const Permutation candidate{order};
    const auto w = arrival_word(writer, candidate, n);
    if (w < best_w) {
      best_w = w;
      best = candidate;
    }
  }
  *best_word = best_w;
  return best;
}

bool zeros_then_ones(const std::vector<int>& word) {
  bool seen_one = false;
  for (int bit : word) {
    if (bit == 1) {
      seen_one = true;
    } else if (seen_one) {
      return false;
    }
  }
  return true;
}

// Repeatedly bumps the first 1-run that precedes a 0; for a monotone
// writer each round strictly extends the leading block of 0's.
bool bump_to_fixpoint(const CachedObliviousWriter& writer, int n, Permutation* sigma,
                      std::vector<int>* word) {
  Permutation current = Permutation::identity(n);
  for (int round = 0; round <= n + 1; ++round) {
    const auto w = arrival_word(writer, current, n);
    if (zeros_then_ones(w)) {
      *sigma = current;
      *word = w;
      return true;
    }
    std::size_t j = 0;
    while (j < w.size() && w[j] == 0) ++j;
    std::size_t k = j;
    while (k + 1 < w.size() && w[k + 1] == 1) ++k;
    // w[k+1] exists and is 0 here, else the shape test above passed
    std::vector<Location> moved(current.order.begin() + static_cast<std::ptrdiff_t>(j),
                                current.order.begin() + static_cast<std::ptrdiff_t>(k) + 1);
    std::vector<Location> rest;
    for (std::size_t i = 0; i < current.order.size(); ++i) {
      if (i < j || i > k) rest.push_back(current.order[i]);
    }
    rest.insert(rest.end(), moved.begin(), moved.end());
    current = Permutation{rest};
  }
  return false;
}

CellArray indicator(const std::vector<Location>& ones, int n) {
  CellArray v(n, 2);
  for (Location l = 1; l <= n; ++l) {
    v.set(l, std::find(ones.begin(), ones.end(), l) != ones.end() ? 2 : 1);
  }
  return v;
}

int floor_sqrt(int n) {
  int k = 0;
  while ((k + 1) * (k + 1) <= n) ++k;
  return k;
}

}  // namespace

WitnessReport monotone_witness(const Protocol& p) {
  if (p.n < 2 || p.n > 9) throw ValidationError("monotone_witness: needs 2 <= n <= 9");
  auto mono = check_monotone(p);
  if (!mono.monotone) {
    throw ValidationError("monotone_witness: the writer is not monotone (location " +
                          std::to_string(mono.location) + ", " + mono.alpha + " vs " +
                          mono.beta + ")");
  }
  const int n = p.n;
  CachedObliviousWriter writer(p);

  Permutation sigma{{}};
  std::vector<int> word;
  bool by_search = n <= 6;
  if (by_search) {
    sigma = lex_min_word_search(writer, n, &word);
  } else if (!bump_to_fixpoint(writer, n, &sigma, &word) || !zeros_then_ones(word)) {
    by_search = true;
    sigma = lex_min_word_search(writer, n, &word);
  }
  if (!zeros_then_ones(word)) {
    throw ContractError("monotone witness: minimal arrival word is not 0-block then 1-block");
  }

  int zeros = 0;
  while (zeros < static_cast<int>(word.size()) && word[static_cast<std::size_t>(zeros)] == 0) {
    ++zeros;
  }
  const int t = n - zeros;
  std::vector<Location> tail(sigma.order.begin() + zeros, sigma.order.end());
  std::sort(tail.begin(), tail.end());
  const CellArray x = indicator(tail, n);

  // Bucket the early elements by where the lone extra 0 lands after the
  // bump; the all-ones class folds into x itself.
  std::map<int, std::vector<Location>> classes;
  for (int i = 0; i < zeros; ++i) {
    const Location k = sigma.order[static_cast<std::size_t>(i)];
    const auto bumped_word = arrival_word(writer, bump(sigma, k), n);
    int lone_zero = n;  // class n: no 0 beyond the prefix
    bool ok = true;
    for (int pos = 0; pos < n - 1; ++pos) {
      if (bumped_word[static_cast<std::size_t>(pos)] == 1) continue;
      if (pos < n - t - 1) continue;  // guaranteed prefix
      if (lone_zero != n) {
        ok = false;  // two stray zeros: not a monotone shape
        break;
      }
      lone_zero = pos + 1;  // 1-based position
    }
    if (!ok) throw ContractError("monotone witness: bumped word has two stray zeros");
    classes[lone_zero].push_back(k);
  }

  int j_star = n;
  std::size_t class_size = 0;
  for (const auto& [j, members] : classes) {
    if (members.size() > class_size) {
      class_size = members.size();
      j_star = j;
    }
  }

  CellArray y = x;
  if (j_star != n && class_size > 0) {
    const Location u = sigma.order[static_cast<std::size_t>(j_star)];  // position j*+1, 1-based
    std::vector<Location> reduced;
    for (Location l : tail) {
      if (l != u) reduced.push_back(l);
    }
    y = indicator(reduced, n);
  }

  WitnessReport report;
  report.protocol = p.name;
  report.kind = "monotone";
  report.n = n;
  report.sigma = sigma.order;
  report.bound = floor_sqrt(n);

  WitnessVertex vx{x.render(), t, verified_vertex_degree(p, x)};
  WitnessVertex vy{y.render(), static_cast<int>(class_size), verified_vertex_degree(p, y)};
  if (j_star == n) vy.claimed = std::max(vy.claimed, t);  // y folded into x
  report.vertices = {vx, vy};
  report.verified = vx.verified >= vx.claimed && vy.verified >= vy.claimed &&
                    std::max(vx.verified, vy.verified) >= report.bound;

  nlohmann::json sizes = nlohmann::json::object();
  for (const auto& [j, members] : classes) sizes[std::to_string(j)] = members.size();
  std::string word_text;
  for (int bit : word) word_text += static_cast<char>('0' + bit);
  report.details = {{"word", word_text},  {"t", t},
                    {"tail", tail},       {"classes", sizes},
                    {"j_star", j_star},   {"by_full_search", by_search}};
  return report;
}

namespace {

// The bit an assignment-oblivious writer gives a location once a given
// set has arrived, realized by streaming the set in ascending order.
int oblivious_bit(const Protocol& p, const std::vector<Location>& arrived_sorted, Location loc) {
  CellArray board(p.n, 2);
  std::vector<Location> history;
  for (Location a : arrived_sorted) {
    const Symbol s = p.alice->write(board, a, history);
    board.set(a, s);
    history.push_back(a);
  }
  return symbol_to_bit(p.alice->write(board, loc, history));
}

CellArray replay_edge(const Protocol& p, const Permutation& sigma) {
  CellArray board(p.n, p.w);
  std::vector<Location> history;
  for (int i = 0; i + 1 < p.n; ++i) {
    const Location loc = sigma.order[static_cast<std::size_t>(i)];
    const Symbol s = p.alice->write(board, loc, history);
    board.set(loc, s);
    history.push_back(loc);
  }
  return board;
}

}  // namespace

WitnessReport assignment_oblivious_witness(const Protocol& p) {
  if (!p.assignment_oblivious) {
    throw ValidationError("assignment_oblivious_witness: writes must depend on the set only");
  }
  if (p.w != 2) throw ValidationError("assignment_oblivious_witness: binary alphabets only");
  if (p.n < 2 || p.n > 16) throw ValidationError("assignment_oblivious_witness: needs 2 <= n <= 16");
  const int n = p.n;

  // Greedy suffix: each placed location's bit depends only on which
  // element ends up last, and the larger half of the candidates keeps
  // that bit constant.
  std::vector<Location> placed{1};  // sigma_{n-1}, sigma_{n-2}, ... in placement order
  std::vector<Location> candidates;
  for (Location l = 2; l <= n; ++l) candidates.push_back(l);
  nlohmann::json trace = nlohmann::json::array();
  Location last = 0;

  while (true) {
    const Location probe = placed.back();
    std::vector<Location> ones;
    std::vector<Location> zeros;
    for (Location j : candidates) {
      std::vector<Location> arrived;
      for (Location l = 1; l <= n; ++l) {
        if (l != j && std::find(placed.begin(), placed.end(), l) == placed.end()) {
          arrived.push_back(l);
        }
      }
      (oblivious_bit(p, arrived, probe) == 1 ? ones : zeros).push_back(j);
    }
    const auto& keep = ones.size() >= zeros.size() ? ones : zeros;
    trace.push_back({{"probe", probe},
                     {"candidates", candidates.size()},
                     {"ones", ones.size()},
                     {"kept", keep.size()}});
    if (keep.empty()) throw ContractError("assignment witness: halving set became empty");
    if (keep.size() == 1) {
      last = keep.front();
      break;
    }
    placed.push_back(keep.front());
    candidates.clear();
    for (std::size_t i = 1; i < keep.size(); ++i) candidates.push_back(keep[i]);
  }

  std::vector<Location> order;
  for (Location l = 1; l <= n; ++l) {
    if (l != last && std::find(placed.begin(), placed.end(), l) == placed.end()) {
      order.push_back(l);
    }
  }
  order.insert(order.end(), placed.rbegin(), placed.rend());
  order.push_back(last);
  const Permutation sigma{order};
  sigma.validate();

  // Each placed k should make swap_last(sigma, k) collide with sigma:
  // the two edges then share a completion, concentrating degree on it.
  const CellArray base = replay_edge(p, sigma);
  std::map<std::uint64_t, std::vector<Location>> buckets;
  std::vector<Location> collisions;
  for (Location k : placed) {
    const CellArray other = replay_edge(p, swap_last(sigma, k));
    bool collide = true;
    for (Location l = 1; l <= n; ++l) {
      if (l == k || l == last) continue;
      if (base.at(l) != other.at(l)) {
        collide = false;
        break;
      }
    }
    if (!collide) continue;
    collisions.push_back(k);
    CellArray vertex = base.with(last, other.at(last));
    buckets[vertex.packed()].push_back(k);
  }

  std::uint64_t best_key = 0;
  std::size_t best_size = 0;
  for (const auto& [key, members] : buckets) {
    if (members.size() > best_size) {
      best_size = members.size();
      best_key = key;
    }
  }
  if (best_size == 0) throw ContractError("assignment witness: no collision survived");
  const CellArray vertex = CellArray::unpack(best_key, n, 2);

  WitnessReport report;
  report.protocol = p.name;
  report.kind = "assignment";
  report.n = n;
  report.sigma = sigma.order;
  const int log_n = ceil_log2(n);
  report.bound = (log_n + 1) / 2;

  // The collision edges run in directions k != sigma_n; the vertex also
  // completes the sigma edge itself, hence the +1.
  WitnessVertex wv{vertex.render(), static_cast<int>(best_size) + 1,
                   verified_vertex_degree(p, vertex)};
  report.vertices = {wv};
  report.verified = wv.verified >= wv.claimed && wv.verified >= report.bound &&
                    static_cast<int>(collisions.size()) + 1 >= log_n;
  report.details = {{"trace", trace},
                    {"collisions", collisions},
                    {"suffix", placed},
                    {"last", last}};
  return report;
}

}  // namespace lastloc::theory
