#ifndef LASTLOC_CODES_HPP
#define LASTLOC_CODES_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "lastloc/base.hpp"

namespace lastloc::codes {

// Width of the location labels for length-n arrays: every l in [n] gets
// the k-bit vector of its binary expansion, k = ceil(log2 n) (at least 1).
// At n = 2^k the label of n itself masks to the zero vector; callers that
// rely on nonzero labels must treat l = 2^k separately.
int index_bits(int n);

// Low k bits of l.
std::uint32_t index_vector(Location l, int k);

// XOR of the labels of all cells holding symbol 2 ('1'). Stars and '0'
// cells contribute nothing, so partial arrays are fine. Binary arrays only.
std::uint32_t gamma(const CellArray& v);

// True iff some completion w of v has gamma(w) = 0.
bool admissible(const CellArray& v);

struct Completion {
  CellArray output;                 // complete, gamma(output) = 0
  std::vector<Location> zero_set;   // stars of the input that became '0', sorted
};

// The completion of v with gamma = 0 whose zero-set among the stars is
// smallest, breaking ties by lexicographically least zero-set. Throws
// InadmissibleError when no completion exists.
Completion canonical_completion(const CellArray& v);

// Binary code robust against symbol deletions. Codewords are indexed
// 0..size()-1 and returned as bit vectors; decode_index accepts a word
// obtained from some codeword by at most deletion_budget() deletions and
// identifies it, throwing DecodeError on anything it cannot place.
class DeletionCode {
 public:
  virtual ~DeletionCode() = default;
  virtual int length() const = 0;
  virtual int deletion_budget() const = 0;
  virtual std::size_t size() const = 0;
  virtual std::vector<int> codeword(std::size_t index) const = 0;
  virtual std::size_t decode_index(const std::vector<int>& received) const = 0;
};

// Length-t binary words x with sum(i * x_i) = residue (mod t+1); such a
// code corrects one deletion. Words are indexed in increasing order of
// their integer value, with position 1 in the least significant bit.
// The constructor materializes the first min_size words and fails with
// InfeasibleError if the code is smaller than that.
class VtCode : public DeletionCode {
 public:
  VtCode(int t, int residue, std::size_t min_size);

  int length() const override { return t_; }
  int deletion_budget() const override { return 1; }
  std::size_t size() const override { return words_.size(); }
  int residue() const { return residue_; }

  std::vector<int> codeword(std::size_t index) const override;
  std::size_t decode_index(const std::vector<int>& received) const override;

  // sum(i * x_i) mod (t+1) for a length-t word.
  static int syndrome(std::uint64_t word, int t);
  // Exact codeword count; enumerates all 2^t words, so t <= 24.
  static std::size_t exact_count(int t, int residue);

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::size_t index_of(std::uint64_t word) const;

  int t_;
  int residue_;
  std::vector<std::uint64_t> words_;  // increasing; materialized prefix only
};

// Lexicographically greedy maximal set of length-k words no two of which
// can collide after d deletions each (collision iff LCS >= k - d). Exact
// but exponential in k, hence the small-k cap.
class GreedyDeletionCode : public DeletionCode {
 public:
  static constexpr int kMaxLength = 12;

  GreedyDeletionCode(int k, int d);

  int length() const override { return k_; }
  int deletion_budget() const override { return d_; }
  std::size_t size() const override { return words_.size(); }

  std::vector<int> codeword(std::size_t index) const override;
  std::size_t decode_index(const std::vector<int>& received) const override;

  static int lcs_length(std::uint64_t x, std::uint64_t y, int k);

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  int k_;
  int d_;
  std::vector<std::uint64_t> words_;
};

// Color in [0, 3n) separating subsets of [n] at symmetric difference 1
// or 2: block (|S| mod 3) resolves size changes, sum mod n resolves
// single-element swaps. Needs n >= 3 so that 3n <= n^2.
int symdiff_color(const std::vector<int>& subset, int n);

// One binary length-n codeword per m-element support: zeros off the
// support, seeded random bits on it. Construction retries until the
// minimum pairwise Hamming distance reaches target_distance, then keeps
// the best attempt seen. All C(n,m) supports are materialized, so the
// family is refused past kMaxWords.
class ProperCode {
 public:
  static constexpr std::size_t kMaxWords = 20000;

  ProperCode(int n, int m, std::uint64_t seed, int target_distance, int retries);

  int n() const { return n_; }
  int m() const { return m_; }
  std::size_t size() const { return supports_.size(); }
  int distance() const { return distance_; }
  int target_distance() const { return target_; }
  bool met_target() const { return distance_ >= target_; }
  int attempts_used() const { return attempts_; }
  std::uint64_t seed() const { return seed_; }

  const std::vector<Location>& support(std::size_t index) const;
  std::size_t support_index(const std::vector<Location>& support) const;
  int embedded_bit(std::size_t index, Location loc) const;

  struct Nearest {
    std::size_t index;
    int distance;
    bool ambiguous;  // another codeword at the same distance
  };
  // bits.size() == n; bits[i] is the symbol at location i+1.
  Nearest nearest(const std::vector<int>& bits) const;

 private:
  int limbs() const { return (n_ + 63) / 64; }
  void fill_words(int attempt, std::vector<std::uint64_t>& words) const;
  int min_pairwise_distance(const std::vector<std::uint64_t>& words) const;

  int n_;
  int m_;
  std::uint64_t seed_;
  int target_;
  int attempts_;
  int distance_;
  std::vector<std::vector<Location>> supports_;  // lex order, each sorted
  std::vector<std::uint64_t> words_;             // limbs() per codeword
};

}  // namespace lastloc::codes

#endif  // LASTLOC_CODES_HPP
