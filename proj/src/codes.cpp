#include "lastloc/codes.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <string>

namespace lastloc::codes {

namespace {

// GF(2) row space over <= 32-bit vectors, one row per leading bit.
class Gf2Span {
 public:
  void insert(std::uint32_t v) {
    while (v) {
      const int b = 31 - std::countl_zero(v);
      if (!rows_[b]) {
        rows_[b] = v;
        return;
      }
      v ^= rows_[b];
    }
  }

  bool contains(std::uint32_t v) const {
    while (v) {
      const int b = 31 - std::countl_zero(v);
      if (!rows_[b]) return false;
      v ^= rows_[b];
    }
    return true;
  }

  int rank() const {
    int r = 0;
    for (std::uint32_t row : rows_) r += row != 0;
    return r;
  }

 private:
  std::uint32_t rows_[32] = {};
};

std::uint64_t bits_to_value(const std::vector<int>& bits) {
  if (bits.size() > 63) throw ValidationError("word longer than 63 bits");
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) throw ValidationError("word bits must be 0 or 1");
    value |= static_cast<std::uint64_t>(bits[i]) << i;
  }
  return value;
}

std::vector<int> value_to_bits(std::uint64_t value, int length) {
  std::vector<int> bits(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) bits[static_cast<std::size_t>(i)] = static_cast<int>((value >> i) & 1);
  return bits;
}

// x is obtainable from y by deletions iff x is a subsequence of y.
bool is_subsequence(const std::vector<int>& x, std::uint64_t y, int k) {
  std::size_t xi = 0;
  for (int i = 0; i < k && xi < x.size(); ++i) {
    if (static_cast<int>((y >> i) & 1) == x[xi]) ++xi;
  }
  return xi == x.size();
}

}  // namespace

int index_bits(int n) {
  return std::max(1, ceil_log2(n));
}

std::uint32_t index_vector(Location l, int k) {
  if (l < 1) throw ValidationError("index_vector: location must be positive");
  if (k < 1 || k > 31) throw ValidationError("index_vector: needs 1 <= k <= 31");
  return static_cast<std::uint32_t>(l) & ((std::uint32_t{1} << k) - 1);
}

std::uint32_t gamma(const CellArray& v) {
  if (v.w() != 2) throw ValidationError("gamma: binary arrays only");
  const int k = index_bits(v.n());
  std::uint32_t acc = 0;
  for (Location l = 1; l <= v.n(); ++l) {
    if (v.at(l) == 2) acc ^= index_vector(l, k);
  }
  return acc;
}

namespace {

// XOR of star labels against the assigned syndrome: a zero-set Z among
// the stars yields a zero-syndrome completion iff xor of Z's labels
// equals this target.
std::uint32_t completion_target(const CellArray& v, const std::vector<Location>& stars) {
  const int k = index_bits(v.n());
  std::uint32_t target = gamma(v);
  for (Location l : stars) target ^= index_vector(l, k);
  return target;
}

}  // namespace

bool admissible(const CellArray& v) {
  if (v.w() != 2) throw ValidationError("admissible: binary arrays only");
  const int k = index_bits(v.n());
  const auto stars = v.star_locations();
  Gf2Span span;
  for (Location l : stars) span.insert(index_vector(l, k));
  return span.contains(completion_target(v, stars));
}

Completion canonical_completion(const CellArray& v) {
  if (v.w() != 2) throw ValidationError("canonical_completion: binary arrays only");
  const int k = index_bits(v.n());
  const auto stars = v.star_locations();
  const std::uint32_t target = completion_target(v, stars);

  Gf2Span span;
  for (Location l : stars) span.insert(index_vector(l, k));
  if (!span.contains(target)) {
    throw InadmissibleError("no completion reaches a zero syndrome");
  }

  // The minimum zero-set has size at most rank (a basis subset reaches
  // any target in the span), so deepen size by size; within one size the
  // combinations come out in lexicographic order, and the first hit is
  // the canonical choice.
  const int star_count = static_cast<int>(stars.size());
  const int max_size = span.rank();
  std::vector<Location> zero_set;
  for (int size = 0; size <= max_size; ++size) {
    std::vector<int> pick(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) pick[static_cast<std::size_t>(i)] = i;
    bool more = size <= star_count;
    while (more) {
      std::uint32_t acc = 0;
      for (int idx : pick) acc ^= index_vector(stars[static_cast<std::size_t>(idx)], k);
      if (acc == target) {
        for (int idx : pick) zero_set.push_back(stars[static_cast<std::size_t>(idx)]);
        CellArray out = v;
        for (Location l : stars) out.set(l, zero_set.end() != std::find(zero_set.begin(), zero_set.end(), l) ? 1 : 2);
        return Completion{std::move(out), std::move(zero_set)};
      }
      // next lex combination of {0..star_count-1}
      int i = size - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == star_count - size + i) --i;
      if (i < 0) {
        more = false;
      } else {
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < size; ++j) {
          pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
      }
    }
  }
  throw ContractError("admissible array had no zero-set within the span rank");
}

VtCode::VtCode(int t, int residue, std::size_t min_size) : t_(t), residue_(residue) {
  if (t < 1 || t > 62) throw ValidationError("VtCode: needs 1 <= t <= 62");
  if (residue < 0 || residue > t) throw ValidationError("VtCode: residue out of range");
  if (min_size < 1) throw ValidationError("VtCode: min_size must be positive");
  if (min_size > (std::size_t{1} << 20)) {
    throw ValidationError("VtCode: refusing to materialize past 2^20 words");
  }
  words_.reserve(min_size);
  const std::uint64_t limit = (t >= 63) ? ~std::uint64_t{0} : (std::uint64_t{1} << t);
  for (std::uint64_t value = 0; value < limit; ++value) {
    if (syndrome(value, t) == residue) {
      words_.push_back(value);
      if (words_.size() == min_size) return;
    }
  }
  throw InfeasibleError("VtCode: fewer than " + std::to_string(min_size) +
                        " codewords exist at length " + std::to_string(t));
}

std::vector<int> VtCode::codeword(std::size_t index) const {
  if (index >= words_.size()) throw ValidationError("VtCode: index past materialized words");
  return value_to_bits(words_[index], t_);
}

int VtCode::syndrome(std::uint64_t word, int t) {
  long long acc = 0;
  for (int i = 1; i <= t; ++i) {
    if ((word >> (i - 1)) & 1) acc += i;
  }
  return static_cast<int>(acc % (t + 1));
}

std::size_t VtCode::exact_count(int t, int residue) {
  if (t < 1 || t > 24) throw ValidationError("exact_count: needs 1 <= t <= 24");
  std::size_t count = 0;
  for (std::uint64_t value = 0; value < (std::uint64_t{1} << t); ++value) {
    if (syndrome(value, t) == residue) ++count;
  }
  return count;
}

std::size_t VtCode::index_of(std::uint64_t word) const {
  const auto it = std::lower_bound(words_.begin(), words_.end(), word);
  if (it != words_.end() && *it == word) {
    return static_cast<std::size_t>(it - words_.begin());
  }
  if (!words_.empty() && word > words_.back()) {
    throw DecodeError("VtCode: codeword lies past the materialized prefix");
  }
  // The constructor's scan collects every matching value in order, so a
  // syndrome-matching word below the prefix end must be present.
  throw ContractError("VtCode: materialized prefix is missing a codeword");
}

std::size_t VtCode::decode_index(const std::vector<int>& received) const {
  const int len = static_cast<int>(received.size());
  if (len != t_ && len != t_ - 1) {
    throw DecodeError("VtCode: received length fits neither 0 nor 1 deletions");
  }
  if (len == t_) {
    const std::uint64_t value = bits_to_value(received);
    if (syndrome(value, t_) != residue_) {
      throw DecodeError("VtCode: full-length word has the wrong syndrome");
    }
    return index_of(value);
  }
  // One deletion: a codeword must restore under some single insertion,
  // and the code's deletion resilience makes that codeword unique.
  std::set<std::uint64_t> candidates;
  const std::uint64_t tail_value = bits_to_value(received);
  for (int pos = 1; pos <= t_; ++pos) {
    const std::uint64_t low = tail_value & ((std::uint64_t{1} << (pos - 1)) - 1);
    const std::uint64_t high = (tail_value >> (pos - 1)) << pos;
    for (std::uint64_t bit = 0; bit <= 1; ++bit) {
      const std::uint64_t candidate = low | (bit << (pos - 1)) | high;
      if (syndrome(candidate, t_) == residue_) candidates.insert(candidate);
    }
  }
  if (candidates.empty()) throw DecodeError("VtCode: no codeword explains the received word");
  if (candidates.size() > 1) throw ContractError("VtCode: deletion ball hit two codewords");
  return index_of(*candidates.begin());
}

GreedyDeletionCode::GreedyDeletionCode(int k, int d) : k_(k), d_(d) {
  if (k < 2 || k > kMaxLength) throw ValidationError("GreedyDeletionCode: needs 2 <= k <= 12");
  if (d < 1 || d >= k) throw ValidationError("GreedyDeletionCode: needs 1 <= d < k");
  for (std::uint64_t value = 0; value < (std::uint64_t{1} << k); ++value) {
    bool clear = true;
    for (std::uint64_t accepted : words_) {
      if (lcs_length(value, accepted, k_) >= k_ - d_) {
        clear = false;
        break;
      }
    }
    if (clear) words_.push_back(value);
  }
}

int GreedyDeletionCode::lcs_length(std::uint64_t x, std::uint64_t y, int k) {
  // dp[j] carries the previous row of the classic LCS table.
  int dp[kMaxLength + 1] = {};
  for (int i = 1; i <= k; ++i) {
    int diag = 0;  // dp[i-1][j-1]
    for (int j = 1; j <= k; ++j) {
      const int above = dp[j];
      if (((x >> (i - 1)) & 1) == ((y >> (j - 1)) & 1)) {
        dp[j] = diag + 1;
      } else {
        dp[j] = std::max(dp[j], dp[j - 1]);
      }
      diag = above;
    }
  }
  return dp[k];
}

std::vector<int> GreedyDeletionCode::codeword(std::size_t index) const {
  if (index >= words_.size()) throw ValidationError("GreedyDeletionCode: index out of range");
  return value_to_bits(words_[index], k_);
}

std::size_t GreedyDeletionCode::decode_index(const std::vector<int>& received) const {
  const int len = static_cast<int>(received.size());
  if (len < k_ - d_ || len > k_) {
    throw DecodeError("GreedyDeletionCode: received length outside the deletion budget");
  }
  for (int bit : received) {
    if (bit != 0 && bit != 1) throw ValidationError("GreedyDeletionCode: bits must be 0 or 1");
  }
  std::size_t match = words_.size();
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (is_subsequence(received, words_[i], k_)) {
      if (match != words_.size()) {
        // Two codewords sharing a >= k-d subsequence are confusable and
        // the greedy construction excludes such pairs.
        throw ContractError("GreedyDeletionCode: two codewords explain the received word");
      }
      match = i;
    }
  }
  if (match == words_.size()) {
    throw DecodeError("GreedyDeletionCode: no codeword explains the received word");
  }
  return match;
}

int symdiff_color(const std::vector<int>& subset, int n) {
  if (n < 3) throw ValidationError("symdiff_color: needs n >= 3");
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  long long sum = 0;
  for (int e : subset) {
    if (e < 1 || e > n) throw ValidationError("symdiff_color: element out of range");
    if (seen[static_cast<std::size_t>(e)]) throw ValidationError("symdiff_color: repeated element");
    seen[static_cast<std::size_t>(e)] = true;
    sum += e;
  }
  const int size_part = static_cast<int>(subset.size() % 3);
  return size_part * n + static_cast<int>(sum % n);
}

ProperCode::ProperCode(int n, int m, std::uint64_t seed, int target_distance, int retries)
    : n_(n), m_(m), seed_(seed), target_(target_distance), attempts_(0), distance_(0) {
  if (n < 1 || n > 512) throw ValidationError("ProperCode: needs 1 <= n <= 512");
  if (m < 1 || m > n) throw ValidationError("ProperCode: needs 1 <= m <= n");
  if (target_distance < 1 || target_distance > n + 1) {
    throw ValidationError("ProperCode: target distance out of range");
  }
  if (retries < 1) throw ValidationError("ProperCode: needs at least one attempt");

  // C(n, m) supports in lexicographic order, refused past the cap.
  std::vector<Location> support(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) support[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    if (supports_.size() >= kMaxWords) {
      throw ValidationError("ProperCode: support family exceeds " + std::to_string(kMaxWords) +
                            " words; pick m closer to n or a smaller n");
    }
    supports_.push_back(support);
    int i = m - 1;
    while (i >= 0 && support[static_cast<std::size_t>(i)] == n - m + 1 + i) --i;
    if (i < 0) break;
    ++support[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j) {
      support[static_cast<std::size_t>(j)] = support[static_cast<std::size_t>(j - 1)] + 1;
    }
  }

  std::vector<std::uint64_t> best_words;
  int best_distance = -1;
  for (int attempt = 0; attempt < retries; ++attempt) {
    std::vector<std::uint64_t> words;
    fill_words(attempt, words);
    const int dist = min_pairwise_distance(words);
    if (dist > best_distance) {
      best_distance = dist;
      best_words = std::move(words);
    }
    attempts_ = attempt + 1;
    if (best_distance >= target_) break;
  }
  words_ = std::move(best_words);
  distance_ = best_distance;
}

void ProperCode::fill_words(int attempt, std::vector<std::uint64_t>& words) const {
  const std::size_t stride = static_cast<std::size_t>(limbs());
  words.assign(supports_.size() * stride, 0);
  const std::uint64_t attempt_seed = Rng::mix_seed(seed_, static_cast<std::uint64_t>(attempt));
  for (std::size_t i = 0; i < supports_.size(); ++i) {
    Rng rng(Rng::mix_seed(attempt_seed, i));
    for (Location loc : supports_[i]) {
      if (rng.next() & 1) {
        words[i * stride + static_cast<std::size_t>(loc - 1) / 64] |=
            std::uint64_t{1} << ((loc - 1) % 64);
      }
    }
  }
}

int ProperCode::min_pairwise_distance(const std::vector<std::uint64_t>& words) const {
  const std::size_t stride = static_cast<std::size_t>(limbs());
  const std::size_t count = supports_.size();
  if (count < 2) return n_ + 1;  // vacuously clean
  int best = n_ + 1;
  for (std::size_t i = 0; i + 1 < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      int dist = 0;
      for (std::size_t s = 0; s < stride; ++s) {
        dist += std::popcount(words[i * stride + s] ^ words[j * stride + s]);
      }
      best = std::min(best, dist);
    }
  }
  return best;
}

const std::vector<Location>& ProperCode::support(std::size_t index) const {
  if (index >= supports_.size()) throw ValidationError("ProperCode: support index out of range");
  return supports_[index];
}

std::size_t ProperCode::support_index(const std::vector<Location>& support) const {
  // Lexicographic rank by binary search; supports_ is built in lex order.
  const auto it = std::lower_bound(supports_.begin(), supports_.end(), support);
  if (it == supports_.end() || *it != support) {
    throw ValidationError("ProperCode: not a support of this code");
  }
  return static_cast<std::size_t>(it - supports_.begin());
}

int ProperCode::embedded_bit(std::size_t index, Location loc) const {
  if (index >= supports_.size()) throw ValidationError("ProperCode: word index out of range");
  if (loc < 1 || loc > n_) throw ValidationError("ProperCode: location out of range");
  const std::size_t stride = static_cast<std::size_t>(limbs());
  return static_cast<int>((words_[index * stride + static_cast<std::size_t>(loc - 1) / 64] >>
                           ((loc - 1) % 64)) & 1);
}

ProperCode::Nearest ProperCode::nearest(const std::vector<int>& bits) const {
  if (static_cast<int>(bits.size()) != n_) throw ValidationError("ProperCode: word length mismatch");
  const std::size_t stride = static_cast<std::size_t>(limbs());
  std::vector<std::uint64_t> query(stride, 0);
  for (int i = 0; i < n_; ++i) {
    if (bits[static_cast<std::size_t>(i)] != 0 && bits[static_cast<std::size_t>(i)] != 1) {
      throw ValidationError("ProperCode: bits must be 0 or 1");
    }
    if (bits[static_cast<std::size_t>(i)]) {
      query[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64);
    }
  }
  Nearest out{0, n_ + 1, false};
  for (std::size_t i = 0; i < supports_.size(); ++i) {
    int dist = 0;
    for (std::size_t s = 0; s < stride; ++s) {
      dist += std::popcount(words_[i * stride + s] ^ query[s]);
    }
    if (dist < out.distance) {
      out = Nearest{i, dist, false};
    } else if (dist == out.distance) {
      out.ambiguous = true;
    }
  }
  return out;
}

}  // namespace lastloc::codes
