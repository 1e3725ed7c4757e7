#include "lastloc/protocols.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace lastloc::protocols {

namespace {

std::vector<Location> all_locations(int n) {
  std::vector<Location> out(static_cast<std::size_t>(n));
  std::iota(out.begin(), out.end(), 1);
  return out;
}

}  // namespace

BlockPartition::BlockPartition(int n_cells, int block_size) : n(n_cells), block(block_size) {
  if (n < 1) throw ValidationError("BlockPartition: n must be at least 1");
  if (block < 1 || block > n) throw ValidationError("BlockPartition: block size out of range");
}

int BlockPartition::block_count() const {
  return (n + block - 1) / block;
}

int BlockPartition::block_of(Location l) const {
  if (l < 1 || l > n) throw ValidationError("BlockPartition: location out of range");
  return (l - 1) / block + 1;
}

std::vector<Location> BlockPartition::members(int block_index) const {
  if (block_index < 1 || block_index > block_count()) {
    throw ValidationError("BlockPartition: block index out of range");
  }
  std::vector<Location> out;
  const Location lo = (block_index - 1) * block + 1;
  const Location hi = std::min(n, block_index * block);
  for (Location l = lo; l <= hi; ++l) out.push_back(l);
  return out;
}

namespace {

class AndOrAlice : public AliceStrategy {
 public:
  explicit AndOrAlice(BlockPartition part) : part_(part) {}

  Symbol write(const CellArray& v, Location loc, std::span<const Location>) const override {
    for (Location m : part_.members(part_.block_of(loc))) {
      if (m != loc && v.starred(m)) return 1;
    }
    return 2;  // last of its block
  }

 private:
  BlockPartition part_;
};

class AndOrBob : public BobDecoder {
 public:
  explicit AndOrBob(BlockPartition part) : part_(part) {}

  std::vector<Location> decode(const CellArray& v) const override {
    std::vector<Location> clean;
    int clean_blocks = 0;
    for (int b = 1; b <= part_.block_count(); ++b) {
      const auto members = part_.members(b);
      if (std::all_of(members.begin(), members.end(),
                      [&](Location l) { return v.at(l) == 1; })) {
        ++clean_blocks;
        clean = members;
      }
    }
    if (clean_blocks == 1) return clean;
    if (clean_blocks > 1) return all_locations(v.n());  // not a protocol output
    return v.symbol_locations(2);
  }

 private:
  BlockPartition part_;
};

}  // namespace

Protocol and_or_protocol(int n) {
  if (n < 1) throw ValidationError("and_or: n must be at least 1");
  const BlockPartition part(n, ceil_sqrt(n));
  Protocol p;
  p.name = "and_or";
  p.n = n;
  p.w = 2;
  p.order_oblivious = true;
  p.assignment_oblivious = true;  // only the star pattern is ever read
  p.alice = std::make_shared<AndOrAlice>(part);
  p.bob = std::make_shared<AndOrBob>(part);
  p.params = {{"n", n}, {"block", part.block}, {"blocks", part.block_count()}};
  return p;
}

namespace {

class ZerosAlice : public AliceStrategy {
 public:
  Symbol write(const CellArray&, Location, std::span<const Location>) const override {
    return 1;
  }
};

class ZerosBob : public BobDecoder {
 public:
  std::vector<Location> decode(const CellArray& v) const override {
    const auto ones = v.symbol_locations(2);
    if (ones.size() == 1) return ones;
    return all_locations(v.n());
  }
};

}  // namespace

Protocol zeros_protocol(int n) {
  if (n < 1) throw ValidationError("zeros: n must be at least 1");
  Protocol p;
  p.name = "zeros";
  p.n = n;
  p.w = 2;
  p.order_oblivious = true;
  p.assignment_oblivious = true;
  p.alice = std::make_shared<ZerosAlice>();
  p.bob = std::make_shared<ZerosBob>();
  p.params = {{"n", n}};
  return p;
}

int SyndromeParams::k() const {
  if (n < 2) throw ValidationError("syndrome: needs n >= 2");
  return codes::index_bits(n);
}

int SyndromeParams::effective_t() const {
  const int width = k();
  const int chosen = (t == 0) ? std::min(width * width, n - 1) : t;
  if (chosen <= width || chosen > n) {
    throw ValidationError("syndrome: tail length must satisfy k < t <= n");
  }
  return chosen;
}

namespace {

class SyndromeAlice : public AliceStrategy {
 public:
  SyndromeAlice(int n, int t) : n_(n), t_(t) {}

  Symbol write(const CellArray& v, Location loc, std::span<const Location>) const override {
    if (v.filled() < n_ - t_) return 1;
    // The canonical completion is stable across the tail (filling one of
    // its cells re-derives the rest), so reading the arriving cell from
    // it is well-defined regardless of arrival order.
    return codes::canonical_completion(v).output.at(loc);
  }

 private:
  int n_;
  int t_;
};

// Diagnostic decoder. A nonzero label sum names the last location
// outright; a zero sum leaves the '1' cells, a possible zero-label cell,
// and the members of any tail whose canonical completion is consistent
// with what is on the board. The canonical decoder is the one that
// defines cost; this exists to make runs inspectable.
class SyndromeBob : public BobDecoder {
 public:
  SyndromeBob(int n, int t) : n_(n), t_(t) {}

  std::vector<Location> decode(const CellArray& v) const override {
    const int k = codes::index_bits(n_);
    const std::uint32_t g = codes::gamma(v);
    if (g != 0) {
      const auto cand = static_cast<Location>(g);
      if (cand >= 1 && cand <= n_) return {cand};
      return all_locations(n_);
    }
    const auto ones = v.symbol_locations(2);
    const auto zeros = v.symbol_locations(1);
    const int z_size = t_ - static_cast<int>(ones.size());
    if (z_size < 0 || z_size > k) return all_locations(n_);

    std::set<Location> out(ones.begin(), ones.end());
    for (Location l : zeros) {
      if (codes::index_vector(l, k) == 0) out.insert(l);
    }
    // Tails consistent with the board: choose z_size zero cells to have
    // been the tail's zero-set; keep those whose canonical completion
    // re-derives exactly that zero-set.
    double combos = 1.0;
    for (int i = 0; i < z_size; ++i) {
      combos *= static_cast<double>(zeros.size() - i) / (i + 1);
    }
    if (combos > 1e6) return all_locations(n_);  // off-path and too wide to scan

    const int zc = static_cast<int>(zeros.size());
    std::vector<int> pick(static_cast<std::size_t>(z_size));
    std::iota(pick.begin(), pick.end(), 0);
    bool more = z_size <= zc;
    while (more) {
      std::vector<Location> s;
      for (int idx : pick) s.push_back(zeros[static_cast<std::size_t>(idx)]);
      CellArray tail_board(n_, 2);
      for (Location l = 1; l <= n_; ++l) {
        const bool is_star = std::binary_search(s.begin(), s.end(), l) ||
                             std::binary_search(ones.begin(), ones.end(), l);
        if (!is_star) tail_board.set(l, 1);
      }
      try {
        if (codes::canonical_completion(tail_board).zero_set == s) {
          out.insert(s.begin(), s.end());
        }
      } catch (const InadmissibleError&) {
      }
      int i = z_size - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == zc - z_size + i) --i;
      if (i < 0) {
        more = false;
      } else {
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < z_size; ++j) {
          pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
      }
    }
    return {out.begin(), out.end()};
  }

 private:
  int n_;
  int t_;
};

}  // namespace

Protocol syndrome_protocol(const SyndromeParams& params) {
  const int t = params.effective_t();
  Protocol p;
  p.name = "syndrome";
  p.n = params.n;
  p.w = 2;
  p.order_oblivious = true;
  p.assignment_oblivious = false;
  p.alice = std::make_shared<SyndromeAlice>(params.n, t);
  p.bob = std::make_shared<SyndromeBob>(params.n, t);
  p.params = {{"n", params.n}, {"t", t}, {"k", params.k()}};
  return p;
}

namespace {

// Smallest c with x^4 <= 2^c.
int ceil_4log2(int x) {
  if (x < 1 || x > (1 << 15)) throw ValidationError("ceil_4log2: needs 1 <= x <= 2^15");
  const auto p = static_cast<std::uint64_t>(x) * x * x * x;
  int c = 0;
  while ((std::uint64_t{1} << c) < p) ++c;
  return c;
}

struct IterCtx {
  int j = 0;
  int n = 0;
  int k0 = 0;
  bool trivial = false;
  std::vector<int> t;
  std::vector<std::shared_ptr<const codes::DeletionCode>> level;  // index 1..j
};

// Locations alive at threshold q: stars plus anything written by phases
// q and later (symbol <= 2(j-q)+2). q = 0 admits everything.
std::vector<Location> threshold_set(const CellArray& v, int j, int q) {
  std::vector<Location> out;
  const int cutoff = 2 * (j - q) + 2;
  for (Location l = 1; l <= v.n(); ++l) {
    if (v.starred(l) || v.at(l) <= cutoff) out.push_back(l);
  }
  return out;
}

class IteratedAlice : public AliceStrategy {
 public:
  explicit IteratedAlice(std::shared_ptr<const IterCtx> c) : c_(std::move(c)) {}

  Symbol write(const CellArray& v, Location loc, std::span<const Location>) const override {
    const auto filler = static_cast<Symbol>(2 * c_->j + 1);
    if (c_->trivial) return filler;
    const int a = v.filled() + 1;  // arrival index
    if (a <= c_->n - c_->t[1]) return filler;
    int p = 0;
    for (int q = 1; q <= c_->j; ++q) {
      const int hi = (q < c_->j) ? c_->n - c_->t[static_cast<std::size_t>(q) + 1] : c_->n - 1;
      if (a > c_->n - c_->t[static_cast<std::size_t>(q)] && a <= hi) {
        p = q;
        break;
      }
    }
    if (p == 0) return filler;  // the forced final arrival; never asked on-path

    const auto alive = threshold_set(v, c_->j, p - 1);
    const auto tail = threshold_set(v, c_->j, p);
    if (static_cast<int>(alive.size()) != c_->t[static_cast<std::size_t>(p) - 1] ||
        static_cast<int>(tail.size()) != c_->t[static_cast<std::size_t>(p)]) {
      return filler;  // off-path board; stay total and deterministic
    }
    std::vector<int> ranks;
    ranks.reserve(tail.size());
    for (Location l : tail) {
      ranks.push_back(static_cast<int>(
          std::lower_bound(alive.begin(), alive.end(), l) - alive.begin() + 1));
    }
    const int color = codes::symdiff_color(ranks, static_cast<int>(alive.size()));
    const auto& code = c_->level[static_cast<std::size_t>(p)];
    if (static_cast<std::size_t>(color) >= code->size()) return filler;
    const auto y = code->codeword(static_cast<std::size_t>(color));
    const auto i = static_cast<std::size_t>(
        std::lower_bound(tail.begin(), tail.end(), loc) - tail.begin());
    return static_cast<Symbol>(2 * (c_->j - p) + 1 + y[i]);
  }

 private:
  std::shared_ptr<const IterCtx> c_;
};

class IteratedBob : public BobDecoder {
 public:
  explicit IteratedBob(std::shared_ptr<const IterCtx> c) : c_(std::move(c)) {}

  std::vector<Location> decode(const CellArray& v) const override {
    if (c_->trivial) return all_locations(v.n());
    std::vector<Symbol> cells;
    cells.reserve(static_cast<std::size_t>(v.n()));
    for (Location l = 1; l <= v.n(); ++l) cells.push_back(v.at(l));
    try {
      return decode_level(cells, all_locations(v.n()), 0);
    } catch (const DecodeError&) {
      return all_locations(v.n());  // sound fallback on any off-path shape
    }
  }

 private:
  std::vector<Location> decode_level(const std::vector<Symbol>& cells,
                                     const std::vector<Location>& positions,
                                     int depth) const {
    const int jc = c_->j - depth;
    if (jc == 0) return positions;
    const int nc = static_cast<int>(positions.size());

    // Phase classes: symbols {2(jc-i)+1, 2(jc-i)+2} belong to phase i,
    // the filler 2jc+1 to phase 0. Exactly one class runs one over its
    // write budget: the class of the forced final symbol.
    std::vector<int> counts(static_cast<std::size_t>(jc) + 1, 0);
    for (Symbol s : cells) {
      if (s == kStar || s > 2 * jc + 1) throw DecodeError("symbol outside the level alphabet");
      ++counts[static_cast<std::size_t>(jc - (s - 1) / 2)];
    }
    std::vector<int> expect(static_cast<std::size_t>(jc) + 1, 0);
    expect[0] = nc - c_->t[static_cast<std::size_t>(depth) + 1];
    for (int i = 1; i < jc; ++i) {
      expect[static_cast<std::size_t>(i)] = c_->t[static_cast<std::size_t>(depth + i)] -
                                            c_->t[static_cast<std::size_t>(depth + i) + 1];
    }
    expect[static_cast<std::size_t>(jc)] = c_->t[static_cast<std::size_t>(depth + jc)] - 1;
    int star_class = -1;
    for (int i = 0; i <= jc; ++i) {
      if (counts[static_cast<std::size_t>(i)] == expect[static_cast<std::size_t>(i)]) continue;
      if (star_class >= 0 ||
          counts[static_cast<std::size_t>(i)] != expect[static_cast<std::size_t>(i)] + 1) {
        throw DecodeError("phase symbol counts do not fit any final location");
      }
      star_class = i;
    }
    if (star_class < 0) throw DecodeError("no phase class is one over budget");

    const Symbol filler = static_cast<Symbol>(2 * jc + 1);
    if (star_class == 0) {
      // The final symbol was the filler: recover the phase-0 tail from
      // the survivors plus the level code, and the unique completion of
      // the survivor set is the final location.
      std::vector<int> survivors;  // 1-based indices into this level
      std::vector<int> received;
      for (int idx = 0; idx < nc; ++idx) {
        const Symbol s = cells[static_cast<std::size_t>(idx)];
        if (s != filler) survivors.push_back(idx + 1);
        if (s == filler - 2 || s == filler - 1) received.push_back(s - (filler - 2));
      }
      const auto color = c_->level[static_cast<std::size_t>(depth) + 1]->decode_index(received);
      int hits = 0;
      Location hit = 0;
      for (int idx = 0; idx < nc; ++idx) {
        if (cells[static_cast<std::size_t>(idx)] != filler) continue;
        std::vector<int> candidate = survivors;
        candidate.insert(std::lower_bound(candidate.begin(), candidate.end(), idx + 1), idx + 1);
        if (codes::symdiff_color(candidate, nc) == static_cast<int>(color)) {
          ++hits;
          hit = positions[static_cast<std::size_t>(idx)];
        }
      }
      if (hits != 1) throw DecodeError("tail set is not uniquely determined");
      return {hit};
    }

    // The final symbol belongs to a later phase: drop the filler cells
    // and read the rest as the next level down, merging this level's two
    // phase-1 symbols into the sub-level filler.
    std::vector<Symbol> sub_cells;
    std::vector<Location> sub_positions;
    for (int idx = 0; idx < nc; ++idx) {
      const Symbol s = cells[static_cast<std::size_t>(idx)];
      if (s == filler) continue;
      sub_cells.push_back(s == filler - 1 ? static_cast<Symbol>(s - 1) : s);
      sub_positions.push_back(positions[static_cast<std::size_t>(idx)]);
    }
    return decode_level(sub_cells, sub_positions, depth + 1);
  }

  std::shared_ptr<const IterCtx> c_;
};

std::shared_ptr<const codes::DeletionCode> default_code(int length, std::size_t min_size,
                                                        int deletions) {
  if (deletions == 1) {
    return std::make_shared<codes::VtCode>(length, 0, min_size);
  }
  if (length > codes::GreedyDeletionCode::kMaxLength) {
    throw InfeasibleError("no searchable code of length " + std::to_string(length) +
                          " for " + std::to_string(deletions) +
                          " deletions; greedy search caps at length " +
                          std::to_string(codes::GreedyDeletionCode::kMaxLength));
  }
  auto code = std::make_shared<codes::GreedyDeletionCode>(length, deletions);
  if (code->size() < min_size) {
    throw InfeasibleError("greedy code of length " + std::to_string(length) + " holds " +
                          std::to_string(code->size()) + " words; level needs " +
                          std::to_string(min_size));
  }
  return code;
}

}  // namespace

std::vector<int> IteratedParams::schedule() const {
  if (j < 1 || j > 7) throw ValidationError("iterated: needs 1 <= j <= 7");
  if (n < 1) throw ValidationError("iterated: n must be at least 1");
  if (k0 < 4) throw ValidationError("iterated: needs k0 >= 4");
  if (trivial()) return {n};
  std::vector<int> t(static_cast<std::size_t>(j) + 1);
  t[0] = n;
  for (int i = 1; i <= j; ++i) {
    t[static_cast<std::size_t>(i)] = std::max(k0, ceil_4log2(t[static_cast<std::size_t>(i) - 1]));
    if (t[static_cast<std::size_t>(i)] >= t[static_cast<std::size_t>(i) - 1]) {
      throw ValidationError("iterated: schedule stops shrinking at level " + std::to_string(i) +
                            "; n is too small for this j and k0");
    }
  }
  return t;
}

Protocol iterated_protocol(const IteratedParams& params, CodeProvider provider) {
  if (params.deletion_budget && *params.deletion_budget < 1) {
    throw ValidationError("iterated: deletion budget override must be positive");
  }
  if (!provider) provider = default_code;

  auto ctx = std::make_shared<IterCtx>();
  ctx->j = params.j;
  ctx->n = params.n;
  ctx->k0 = params.k0;
  ctx->trivial = params.trivial();
  ctx->t = params.schedule();

  nlohmann::json levels = nlohmann::json::array();
  if (!ctx->trivial) {
    ctx->level.resize(static_cast<std::size_t>(params.j) + 1);
    for (int p = 1; p <= params.j; ++p) {
      const int length = ctx->t[static_cast<std::size_t>(p)];
      const auto prev = static_cast<std::size_t>(ctx->t[static_cast<std::size_t>(p) - 1]);
      const std::size_t min_size = prev * prev;
      const int deletions =
          (p == params.j) ? 1 : params.deletion_budget.value_or(ctx->t[static_cast<std::size_t>(p) + 1]);
      auto code = provider(length, min_size, deletions);
      if (!code || code->length() != length || code->size() < min_size) {
        throw ContractError("code provider returned an unusable level code");
      }
      ctx->level[static_cast<std::size_t>(p)] = code;
      levels.push_back({{"length", length},
                        {"min_size", min_size},
                        {"deletions", deletions},
                        {"size", code->size()}});
    }
  }

  Protocol p;
  p.name = "iterated";
  p.n = params.n;
  p.w = 2 * params.j + 1;
  p.order_oblivious = true;
  p.assignment_oblivious = false;
  p.alice = std::make_shared<IteratedAlice>(ctx);
  p.bob = std::make_shared<IteratedBob>(ctx);
  p.params = {{"n", params.n}, {"j", params.j},       {"k0", params.k0},
              {"trivial", ctx->trivial}, {"schedule", ctx->t}, {"levels", levels}};
  if (params.deletion_budget) p.params["deletion_budget"] = *params.deletion_budget;
  return p;
}

int BlockCodeParams::k() const {
  if (n < 1) throw ValidationError("block_code: n must be at least 1");
  if (theta <= 0.0 || theta > 1.0) throw ValidationError("block_code: needs 0 < theta <= 1");
  int k = 1;
  while (static_cast<double>(k) * k < theta * n - 1e-9) ++k;
  return k;
}

int BlockCodeParams::m() const {
  return k() * k();
}

namespace {

class BlockCodeAlice : public AliceStrategy {
 public:
  BlockCodeAlice(std::shared_ptr<const codes::ProperCode> code, int k)
      : code_(std::move(code)), k_(k) {}

  Symbol write(const CellArray& v, Location loc,
               std::span<const Location> history) const override {
    const int n = code_->n();
    const int m = code_->m();
    if (v.filled() < n - m) return 1;
    if (static_cast<int>(history.size()) < n - m) {
      throw ContractError("tail writer needs the full arrival history");
    }
    // The tail is the complement of the first n-m arrivals; the board
    // alone cannot tell a codeword '0' from an early '0', hence the
    // history dependence.
    std::vector<bool> early(static_cast<std::size_t>(n) + 1, false);
    for (int i = 0; i < n - m; ++i) early[static_cast<std::size_t>(history[i])] = true;
    std::vector<Location> tail;
    tail.reserve(static_cast<std::size_t>(m));
    for (Location l = 1; l <= n; ++l) {
      if (!early[static_cast<std::size_t>(l)]) tail.push_back(l);
    }
    const std::size_t word = code_->support_index(tail);
    int bit = code_->embedded_bit(word, loc);
    const auto idx = static_cast<int>(
        std::lower_bound(tail.begin(), tail.end(), loc) - tail.begin());
    const int lo = (idx / k_) * k_;
    bool last_of_block = true;
    for (int i = lo; i < std::min(lo + k_, m); ++i) {
      if (tail[static_cast<std::size_t>(i)] != loc &&
          v.starred(tail[static_cast<std::size_t>(i)])) {
        last_of_block = false;
        break;
      }
    }
    if (last_of_block) bit ^= 1;
    return static_cast<Symbol>(bit + 1);
  }

 private:
  std::shared_ptr<const codes::ProperCode> code_;
  int k_;
};

class BlockCodeBob : public BobDecoder {
 public:
  BlockCodeBob(std::shared_ptr<const codes::ProperCode> code, int k)
      : code_(std::move(code)), k_(k) {}

  std::vector<Location> decode(const CellArray& v) const override {
    std::vector<int> bits;
    bits.reserve(static_cast<std::size_t>(v.n()));
    for (Location l = 1; l <= v.n(); ++l) bits.push_back(v.at(l) - 1);
    const auto near = code_->nearest(bits);
    const int radius = (code_->distance() - 1) / 2;
    if (near.ambiguous || near.distance > radius) {
      throw DecodeError("received array is outside the decoding radius");
    }
    const auto& tail = code_->support(near.index);
    // Each block of the tail carries one flip, except the final cell's
    // block when the forced bit happened to match the codeword; a lone
    // clean block therefore pins the final cell to it.
    std::vector<Location> disagreements;
    std::vector<Location> clean;
    int clean_blocks = 0;
    for (std::size_t lo = 0; lo < tail.size(); lo += static_cast<std::size_t>(k_)) {
      const std::size_t hi = std::min(tail.size(), lo + static_cast<std::size_t>(k_));
      bool block_clean = true;
      for (std::size_t i = lo; i < hi; ++i) {
        const Location l = tail[i];
        if (bits[static_cast<std::size_t>(l - 1)] != code_->embedded_bit(near.index, l)) {
          disagreements.push_back(l);
          block_clean = false;
        }
      }
      if (block_clean) {
        ++clean_blocks;
        clean.assign(tail.begin() + static_cast<std::ptrdiff_t>(lo),
                     tail.begin() + static_cast<std::ptrdiff_t>(hi));
      }
    }
    if (clean_blocks > 1) throw DecodeError("multiple clean blocks cannot happen on-path");
    if (clean_blocks == 1) return clean;
    return disagreements;
  }

 private:
  std::shared_ptr<const codes::ProperCode> code_;
  int k_;
};

}  // namespace

Protocol block_code_protocol(const BlockCodeParams& params) {
  const int k = params.k();
  const int m = params.m();
  if (m > params.n) {
    throw ValidationError("block_code: tail k^2 = " + std::to_string(m) +
                          " exceeds n = " + std::to_string(params.n) +
                          "; lower theta or raise n");
  }
  const int target = 2 * k + 1;
  auto code = std::make_shared<codes::ProperCode>(params.n, m, params.seed, target,
                                                  params.retries);
  Protocol p;
  p.name = "block_code";
  p.n = params.n;
  p.w = 2;
  p.order_oblivious = false;
  p.assignment_oblivious = false;
  p.alice = std::make_shared<BlockCodeAlice>(code, k);
  p.bob = std::make_shared<BlockCodeBob>(code, k);
  p.params = {{"n", params.n},
              {"theta", params.theta},
              {"seed", params.seed},
              {"retries", params.retries},
              {"k", k},
              {"m", m},
              {"target_distance", target},
              {"distance", code->distance()},
              {"met_target", code->met_target()},
              {"attempts", code->attempts_used()},
              {"words", code->size()}};
  return p;
}

Protocol make_protocol(const std::string& name, const nlohmann::json& options) {
  if (!options.contains("n")) throw ValidationError("protocol options need n");
  const int n = options.at("n").get<int>();
  if (name == "and_or") return and_or_protocol(n);
  if (name == "zeros") return zeros_protocol(n);
  if (name == "syndrome") {
    SyndromeParams sp;
    sp.n = n;
    sp.t = options.value("t", 0);
    return syndrome_protocol(sp);
  }
  if (name == "iterated") {
    IteratedParams ip;
    ip.n = n;
    ip.j = options.value("j", 1);
    ip.k0 = options.value("k0", 16);
    if (options.contains("deletion_budget")) {
      ip.deletion_budget = options.at("deletion_budget").get<int>();
    }
    return iterated_protocol(ip);
  }
  if (name == "block_code") {
    BlockCodeParams bp;
    bp.n = n;
    bp.theta = options.value("theta", 0.8);
    bp.seed = options.value("seed", std::uint64_t{1});
    bp.retries = options.value("retries", 200);
    return block_code_protocol(bp);
  }
  throw ValidationError("unknown protocol '" + name +
                        "'; expected and_or, zeros, syndrome, iterated, or block_code");
}

std::vector<Protocol> catalog(int n) {
  if (n < 2) throw ValidationError("catalog: needs n >= 2");
  std::vector<Protocol> out;
  out.push_back(and_or_protocol(n));
  out.push_back(zeros_protocol(n));
  if (n >= 4) out.push_back(syndrome_protocol(SyndromeParams{n, 0}));
  out.push_back(iterated_protocol(IteratedParams{1, n, 16, std::nullopt}));
  const BlockCodeParams bc{n, 0.8, 1, 200};
  if (bc.m() <= n) out.push_back(block_code_protocol(bc));
  return out;
}

}  // namespace lastloc::protocols
