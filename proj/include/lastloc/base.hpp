#ifndef LASTLOC_BASE_HPP
#define LASTLOC_BASE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lastloc {

// Locations are 1-based throughout; 0 is never a valid location.
using Location = int;

// Cell symbols: 0 is the unwritten marker, written symbols are 1..w.
// For binary protocols (w = 2) symbol 1 renders as '0' and 2 as '1'.
using Symbol = std::uint8_t;
inline constexpr Symbol kStar = 0;

// Bad caller input (ranges, malformed strings, out-of-bounds parameters).
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Internal invariant broke; indicates a bug, not bad input.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

// A requested construction provably cannot exist at these parameters.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A partial state admits no completion under the governing constraint.
struct InadmissibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A decoder could not produce a codeword (off-path input, ambiguity).
struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// splitmix64. Hand-rolled so that streams are identical across platforms
// and standard-library versions; std::mt19937 order would not survive a
// distribution change.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);

  // Derives a decorrelated seed for a sub-stream (thread shard, retry).
  static std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

 private:
  std::uint64_t state_;
};

// Write-once array of n cells over alphabet {1..w}, unwritten cells 0.
class CellArray {
 public:
  CellArray(int n, int w);

  int n() const { return n_; }
  int w() const { return w_; }

  Symbol at(Location loc) const;
  // Writing a non-star cell or an out-of-range symbol throws.
  void set(Location loc, Symbol s);
  CellArray with(Location loc, Symbol s) const;

  bool starred(Location loc) const { return at(loc) == kStar; }
  int star_count() const { return n_ - filled_; }
  int filled() const { return filled_; }
  bool is_complete() const { return filled_ == n_; }
  // The unique unwritten location; throws unless exactly one remains.
  Location sole_star() const;

  std::vector<Location> star_locations() const;
  std::vector<Location> symbol_locations(Symbol s) const;

  // 4 bits per cell, cell 1 in the low nibble. Requires n <= 16 and
  // w <= 15; the packed form keys hash sets during enumeration.
  std::uint64_t packed() const;
  static CellArray unpack(std::uint64_t key, int n, int w);

  // '*' for stars; binary cells render as '0'/'1', wider alphabets as
  // the symbol digit itself. parse() inverts render() exactly.
  std::string render() const;
  static CellArray parse(const std::string& text, int w);

  // Binary helpers: bit i of mask is 1 iff cell i+1 holds symbol 2.
  // Only meaningful for complete binary arrays.
  static CellArray from_mask(std::uint64_t mask, int n);
  std::uint64_t ones_mask() const;

  bool operator==(const CellArray& other) const = default;

 private:
  int n_;
  int w_;
  int filled_;
  std::vector<Symbol> cells_;
};

// External bit b in {0,1} maps to the stored symbol b+1.
inline Symbol bit_to_symbol(int b) {
  if (b != 0 && b != 1) throw ValidationError("bit must be 0 or 1");
  return static_cast<Symbol>(b + 1);
}
inline int symbol_to_bit(Symbol s) {
  if (s != 1 && s != 2) throw ValidationError("symbol is not binary");
  return s - 1;
}

// Arrival order: order[i] is the location written at step i+1.
struct Permutation {
  std::vector<Location> order;

  int n() const { return static_cast<int>(order.size()); }
  Location last() const;
  void validate() const;  // throws unless a permutation of 1..n

  static Permutation identity(int n);
  bool operator==(const Permutation& other) const = default;
};

Permutation random_permutation(int n, Rng& rng);

// Smallest k with k*k >= n.
int ceil_sqrt(int n);
// Smallest k with 2^k >= n; ceil_log2(1) = 0.
int ceil_log2(int n);

}  // namespace lastloc

#endif  // LASTLOC_BASE_HPP
