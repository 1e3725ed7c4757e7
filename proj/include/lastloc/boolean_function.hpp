#ifndef LASTLOC_BOOLEAN_FUNCTION_HPP
#define LASTLOC_BOOLEAN_FUNCTION_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lastloc/game.hpp"

namespace lastloc::theory {

// Truth table on n variables, n <= 20. Input masks use bit i-1 for
// variable i; table bit at index `mask` is f(mask).
class BooleanFunction {
 public:
  static constexpr int kMaxVars = 20;

  BooleanFunction(int n, std::vector<std::uint64_t> packed_table);
  static BooleanFunction from_bits(int n, const std::vector<int>& bits);
  // Hex digits are big-endian (most significant first); bit 0 of the
  // decoded number is f(0...0). Shorter strings mean leading zeros.
  static BooleanFunction from_hex(int n, std::string_view hex);
  static BooleanFunction constant(int n, int value);
  static BooleanFunction or_function(int n);
  static BooleanFunction and_function(int n);
  static BooleanFunction xor_function(int n);
  // n must be a perfect square k*k: AND over k contiguous blocks of the
  // OR of each block's k variables.
  static BooleanFunction and_or_function(int n);
  static BooleanFunction majority_function(int n);  // odd n
  static BooleanFunction named(const std::string& name, int n);

  int n() const { return n_; }
  std::uint64_t points() const { return std::uint64_t{1} << n_; }
  int value(std::uint32_t mask) const;
  bool is_constant() const;
  std::string to_hex() const;

  // Fix variable var (1-based) to bit, producing a function on n-1
  // variables; the remaining variables keep their relative order.
  BooleanFunction fix_variable(int var, int bit) const;
  // Fix every variable outside keep_mask to 0 and reindex the kept ones.
  BooleanFunction zero_outside(std::uint32_t keep_mask) const;

  bool operator==(const BooleanFunction& other) const = default;

 private:
  int n_;
  std::vector<std::uint64_t> table_;
};

// Integer coefficients of the unique multilinear polynomial agreeing
// with f on {0,1}^n, indexed by monomial mask.
struct MultilinearPoly {
  int n = 0;
  std::vector<std::int32_t> coeff;

  int degree() const;  // -1 for the zero polynomial
  std::int64_t eval(std::uint32_t mask) const;
};

MultilinearPoly multilinear(const BooleanFunction& f);

// Degree of the multilinear polynomial; constants have degree 0.
int degree(const BooleanFunction& f);

struct SensitivityProfile {
  int n = 0;
  int max = 0;
  std::vector<int> per_point;  // index = input mask
  std::uint64_t edge_count = 0;
};

SensitivityProfile sensitivity(const BooleanFunction& f);

// The edges of the hypercube across which f changes, as a finalized
// edge graph: vertex degrees are per-point sensitivities and the max
// degree is s(f). Needs n <= 16 for the packed representation.
EdgeGraph sensitive_edges(const BooleanFunction& f);

struct FullDegreeRestriction {
  std::uint32_t variables = 0;  // kept variables, bit i-1 for variable i
  BooleanFunction sub;          // full degree on the kept variables
};

// Picks a maximum-degree monomial with nonzero coefficient (smallest
// mask on ties) and fixes everything outside it to 0. Rejects constants.
FullDegreeRestriction full_degree_subfunction(const BooleanFunction& f);

// For f of full degree: the bit b such that fixing x_var = b keeps full
// degree on the remaining variables. Returns 0 whenever the var-free
// part retains the full monomial, else 1.
int degree_preserving_bit(const BooleanFunction& f, int var);
int degree_preserving_bit(const MultilinearPoly& poly, int var);

// Compiles a full-degree f on n variables into an order-oblivious
// protocol on n cells whose writes keep the restriction at full degree
// on the unfilled cells. Its decoder outputs the sensitive coordinates
// of the final array, so the cost is at most s(f).
Protocol function_to_protocol(const BooleanFunction& f);

int decision_tree_depth(const BooleanFunction& f);  // n <= 14
bool is_evasive(const BooleanFunction& f);

}  // namespace lastloc::theory

#endif  // LASTLOC_BOOLEAN_FUNCTION_HPP
