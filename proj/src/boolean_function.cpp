#include "lastloc/boolean_function.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>

namespace lastloc::theory {

namespace {

std::size_t table_words(int n) {
  const std::uint64_t points = std::uint64_t{1} << n;
  return static_cast<std::size_t>((points + 63) / 64);
}

void check_vars(int n) {
  if (n < 1 || n > BooleanFunction::kMaxVars) {
    throw ValidationError("boolean function: needs 1 <= n <= " +
                          std::to_string(BooleanFunction::kMaxVars));
  }
}

}  // namespace

BooleanFunction::BooleanFunction(int n, std::vector<std::uint64_t> packed_table)
    : n_(n), table_(std::move(packed_table)) {
  check_vars(n);
  if (table_.size() != table_words(n)) {
    throw ValidationError("boolean function: table has the wrong length");
  }
  if (n < 6) table_[0] &= (std::uint64_t{1} << (1 << n)) - 1;
}

BooleanFunction BooleanFunction::from_bits(int n, const std::vector<int>& bits) {
  check_vars(n);
  if (bits.size() != (std::uint64_t{1} << n)) {
    throw ValidationError("boolean function: needs exactly 2^n bits");
  }
  std::vector<std::uint64_t> table(table_words(n), 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) throw ValidationError("boolean function: bits must be 0/1");
    if (bits[i]) table[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  return {n, std::move(table)};
}

BooleanFunction BooleanFunction::from_hex(int n, std::string_view hex) {
  check_vars(n);
  if (hex.substr(0, 2) == "0x" || hex.substr(0, 2) == "0X") hex.remove_prefix(2);
  const std::uint64_t points = std::uint64_t{1} << n;
  const std::size_t max_digits = static_cast<std::size_t>((points + 3) / 4);
  if (hex.empty() || hex.size() > max_digits) {
    throw ValidationError("boolean function: hex table must hold 1.." +
                          std::to_string(max_digits) + " digits");
  }
  std::vector<std::uint64_t> table(table_words(n), 0);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char c = hex[hex.size() - 1 - d];  // digit d counts from the right
    int val = 0;
    if (c >= '0' && c <= '9') {
      val = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      val = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      val = c - 'A' + 10;
    } else {
      throw ValidationError("boolean function: bad hex digit");
    }
    table[(4 * d) >> 6] |= static_cast<std::uint64_t>(val) << ((4 * d) & 63);
  }
  return {n, std::move(table)};
}

BooleanFunction BooleanFunction::constant(int n, int value) {
  check_vars(n);
  if (value != 0 && value != 1) throw ValidationError("boolean function: value must be 0/1");
  std::vector<std::uint64_t> table(table_words(n), value ? ~std::uint64_t{0} : 0);
  return {n, std::move(table)};
}

BooleanFunction BooleanFunction::or_function(int n) {
  auto f = constant(n, 1);
  f.table_[0] &= ~std::uint64_t{1};  // f(0...0) = 0
  return f;
}

BooleanFunction BooleanFunction::and_function(int n) {
  auto f = constant(n, 0);
  const std::uint64_t top = (std::uint64_t{1} << n) - 1;
  f.table_[top >> 6] |= std::uint64_t{1} << (top & 63);
  return f;
}

BooleanFunction BooleanFunction::xor_function(int n) {
  check_vars(n);
  std::vector<std::uint64_t> table(table_words(n), 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) & 1) table[mask >> 6] |= std::uint64_t{1} << (mask & 63);
  }
  return {n, std::move(table)};
}

BooleanFunction BooleanFunction::and_or_function(int n) {
  check_vars(n);
  const int k = ceil_sqrt(n);
  if (k * k != n) throw ValidationError("and_or function: n must be a perfect square");
  std::vector<std::uint64_t> table(table_words(n), 0);
  const std::uint32_t block = (std::uint32_t{1} << k) - 1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool all = true;
    for (int b = 0; b < k; ++b) {
      if (((mask >> (b * k)) & block) == 0) {
        all = false;
        break;
      }
    }
    if (all) table[mask >> 6] |= std::uint64_t{1} << (mask & 63);
  }
  return {n, std::move(table)};
}

BooleanFunction BooleanFunction::majority_function(int n) {
  check_vars(n);
  if (n % 2 == 0) throw ValidationError("majority: n must be odd");
  std::vector<std::uint64_t> table(table_words(n), 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (2 * std::popcount(mask) > n) table[mask >> 6] |= std::uint64_t{1} << (mask & 63);
  }
  return {n, std::move(table)};
}

BooleanFunction BooleanFunction::named(const std::string& name, int n) {
  if (name == "or") return or_function(n);
  if (name == "and") return and_function(n);
  if (name == "xor") return xor_function(n);
  if (name == "and_or") return and_or_function(n);
  if (name == "majority") return majority_function(n);
  throw ValidationError("unknown function '" + name +
                        "'; expected or, and, xor, and_or, or majority");
}

int BooleanFunction::value(std::uint32_t mask) const {
  if (mask >= points()) throw ValidationError("boolean function: input mask out of range");
  return static_cast<int>((table_[mask >> 6] >> (mask & 63)) & 1);
}

bool BooleanFunction::is_constant() const {
  const int first = value(0);
  for (std::uint32_t mask = 1; mask < points(); ++mask) {
    if (value(mask) != first) return false;
  }
  return true;
}

std::string BooleanFunction::to_hex() const {
  const std::size_t digits = static_cast<std::size_t>((points() + 3) / 4);
  std::string out(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    const auto val = static_cast<int>((table_[(4 * d) >> 6] >> ((4 * d) & 63)) & 0xF);
    out[digits - 1 - d] = "0123456789abcdef"[val];
  }
  return out;
}

BooleanFunction BooleanFunction::fix_variable(int var, int bit) const {
  if (var < 1 || var > n_) throw ValidationError("fix_variable: variable out of range");
  if (bit != 0 && bit != 1) throw ValidationError("fix_variable: bit must be 0/1");
  if (n_ == 1) throw ValidationError("fix_variable: cannot go below one variable");
  const std::uint32_t low_mask = (std::uint32_t{1} << (var - 1)) - 1;
  std::vector<std::uint64_t> table(table_words(n_ - 1), 0);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << (n_ - 1)); ++mask) {
    const std::uint32_t original = (mask & low_mask) |
                                   (static_cast<std::uint32_t>(bit) << (var - 1)) |
                                   ((mask & ~low_mask) << 1);
    if (value(original)) table[mask >> 6] |= std::uint64_t{1} << (mask & 63);
  }
  return {n_ - 1, std::move(table)};
}

BooleanFunction BooleanFunction::zero_outside(std::uint32_t keep_mask) const {
  if (keep_mask == 0 || keep_mask >= points()) {
    throw ValidationError("zero_outside: keep mask must be a nonempty subset of the variables");
  }
  std::vector<int> positions;
  for (int i = 0; i < n_; ++i) {
    if (keep_mask & (std::uint32_t{1} << i)) positions.push_back(i);
  }
  const int k = static_cast<int>(positions.size());
  std::vector<std::uint64_t> table(table_words(k), 0);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
    std::uint32_t original = 0;
    for (int i = 0; i < k; ++i) {
      if (mask & (std::uint32_t{1} << i)) original |= std::uint32_t{1} << positions[i];
    }
    if (value(original)) table[mask >> 6] |= std::uint64_t{1} << (mask & 63);
  }
  return {k, std::move(table)};
}

int MultilinearPoly::degree() const {
  int best = -1;
  for (std::size_t mask = 0; mask < coeff.size(); ++mask) {
    if (coeff[mask] != 0) best = std::max(best, std::popcount(mask));
  }
  return best;
}

std::int64_t MultilinearPoly::eval(std::uint32_t mask) const {
  if (mask >= coeff.size()) throw ValidationError("poly eval: input mask out of range");
  std::int64_t total = coeff[0];
  for (std::uint32_t sub = mask; sub != 0; sub = (sub - 1) & mask) {
    total += coeff[sub];
  }
  return total;
}

MultilinearPoly multilinear(const BooleanFunction& f) {
  MultilinearPoly poly;
  poly.n = f.n();
  poly.coeff.resize(static_cast<std::size_t>(f.points()));
  for (std::uint32_t mask = 0; mask < f.points(); ++mask) {
    poly.coeff[mask] = static_cast<std::int32_t>(f.value(mask));
  }
  for (int b = 0; b < f.n(); ++b) {
    const std::uint32_t bit = std::uint32_t{1} << b;
    for (std::uint32_t mask = 0; mask < f.points(); ++mask) {
      if (mask & bit) poly.coeff[mask] -= poly.coeff[mask ^ bit];
    }
  }
  return poly;
}

int degree(const BooleanFunction& f) {
  return std::max(0, multilinear(f).degree());
}

SensitivityProfile sensitivity(const BooleanFunction& f) {
  SensitivityProfile profile;
  profile.n = f.n();
  profile.per_point.resize(static_cast<std::size_t>(f.points()));
  std::uint64_t touching = 0;
  for (std::uint32_t mask = 0; mask < f.points(); ++mask) {
    int s = 0;
    for (int i = 0; i < f.n(); ++i) {
      if (f.value(mask) != f.value(mask ^ (std::uint32_t{1} << i))) ++s;
    }
    profile.per_point[mask] = s;
    profile.max = std::max(profile.max, s);
    touching += static_cast<std::uint64_t>(s);
  }
  profile.edge_count = touching / 2;  // each sensitive edge counted at both ends
  return profile;
}

EdgeGraph sensitive_edges(const BooleanFunction& f) {
  if (f.n() > 16) throw ValidationError("sensitive_edges: packed arrays need n <= 16");
  EdgeGraph graph(f.n(), 2);
  for (std::uint32_t mask = 0; mask < f.points(); ++mask) {
    for (int i = 0; i < f.n(); ++i) {
      const std::uint32_t bit = std::uint32_t{1} << i;
      if (mask & bit) continue;
      if (f.value(mask) == f.value(mask | bit)) continue;
      std::uint64_t packed = 0;
      for (int j = 0; j < f.n(); ++j) {
        if (j == i) continue;  // the free cell keeps its star nibble
        const std::uint64_t symbol = ((mask >> j) & 1) + 1;
        packed |= symbol << (4 * j);
      }
      graph.add_edge(packed);
    }
  }
  graph.finalize();
  return graph;
}

FullDegreeRestriction full_degree_subfunction(const BooleanFunction& f) {
  if (f.is_constant()) throw ValidationError("full_degree_subfunction: f must be nonconstant");
  const auto poly = multilinear(f);
  std::uint32_t best = 0;
  int best_size = -1;
  for (std::uint32_t mask = 0; mask < f.points(); ++mask) {
    if (poly.coeff[mask] == 0) continue;
    if (std::popcount(mask) > best_size) {
      best = mask;
      best_size = std::popcount(mask);
    }
  }
  return {best, f.zero_outside(best)};
}

int degree_preserving_bit(const MultilinearPoly& poly, int var) {
  if (var < 1 || var > poly.n) throw ValidationError("degree_preserving_bit: variable out of range");
  const auto full = static_cast<std::uint32_t>(poly.coeff.size() - 1);
  if (poly.coeff[full] == 0) {
    throw ValidationError("degree_preserving_bit: f must have full degree");
  }
  // f = p1 + x_var * p2; fixing 0 keeps p1, fixing 1 adds p2's top
  // coefficient to p1's, and the two cannot both vanish.
  return poly.coeff[full ^ (std::uint32_t{1} << (var - 1))] != 0 ? 0 : 1;
}

int degree_preserving_bit(const BooleanFunction& f, int var) {
  return degree_preserving_bit(multilinear(f), var);
}

namespace {

class FunctionAlice : public AliceStrategy {
 public:
  explicit FunctionAlice(MultilinearPoly poly) : poly_(std::move(poly)) {}

  Symbol write(const CellArray& v, Location loc, std::span<const Location>) const override {
    std::uint32_t remaining = 0;
    std::uint32_t ones = 0;
    for (Location l = 1; l <= v.n(); ++l) {
      if (v.starred(l)) {
        if (l != loc) remaining |= std::uint32_t{1} << (l - 1);
      } else if (v.at(l) == 2) {
        ones |= std::uint32_t{1} << (l - 1);
      }
    }
    // Coefficient of the remaining-stars monomial in f restricted by the
    // board with x_loc = 0; nonzero means writing 0 keeps full degree.
    std::int64_t c0 = poly_.coeff[remaining];
    for (std::uint32_t sub = ones; sub != 0; sub = (sub - 1) & ones) {
      c0 += poly_.coeff[remaining | sub];
    }
    return c0 != 0 ? 1 : 2;
  }

 private:
  MultilinearPoly poly_;
};

class FunctionBob : public BobDecoder {
 public:
  explicit FunctionBob(BooleanFunction f) : f_(std::move(f)) {}

  std::vector<Location> decode(const CellArray& v) const override {
    std::uint32_t x = 0;
    for (Location l = 1; l <= v.n(); ++l) {
      if (v.at(l) == 2) x |= std::uint32_t{1} << (l - 1);
    }
    std::vector<Location> out;
    for (Location l = 1; l <= v.n(); ++l) {
      if (f_.value(x) != f_.value(x ^ (std::uint32_t{1} << (l - 1)))) out.push_back(l);
    }
    if (out.empty()) {
      out.resize(static_cast<std::size_t>(v.n()));
      std::iota(out.begin(), out.end(), 1);
    }
    return out;
  }

 private:
  BooleanFunction f_;
};

}  // namespace

Protocol function_to_protocol(const BooleanFunction& f) {
  auto poly = multilinear(f);
  if (poly.degree() != f.n()) {
    throw ValidationError("function_to_protocol: f must have full degree; restrict it first");
  }
  Protocol p;
  p.name = "function";
  p.n = f.n();
  p.w = 2;
  p.order_oblivious = true;
  p.assignment_oblivious = false;  // writes read the assigned bits, not just the set
  p.params = {{"n", f.n()}, {"hex", f.to_hex()}};
  p.alice = std::make_shared<FunctionAlice>(std::move(poly));
  p.bob = std::make_shared<FunctionBob>(f);
  return p;
}

namespace {

// Partial assignments encode base 3: digit i is 0 when variable i+1 is
// free, else 1 + assigned bit.
struct DepthSolver {
  const BooleanFunction& f;
  std::vector<std::uint32_t> pow3;
  std::vector<std::int8_t> val;    // 0, 1, or 2 = mixed
  std::vector<std::int8_t> depth;  // -1 = unknown

  explicit DepthSolver(const BooleanFunction& fn) : f(fn) {
    pow3.resize(static_cast<std::size_t>(f.n()) + 1);
    pow3[0] = 1;
    for (int i = 1; i <= f.n(); ++i) pow3[static_cast<std::size_t>(i)] = 3 * pow3[static_cast<std::size_t>(i) - 1];
    val.assign(pow3[static_cast<std::size_t>(f.n())], -1);
    depth.assign(pow3[static_cast<std::size_t>(f.n())], -1);
  }

  std::uint32_t encode(std::uint32_t fixed, std::uint32_t bits) const {
    std::uint32_t idx = 0;
    for (int i = 0; i < f.n(); ++i) {
      if (fixed & (std::uint32_t{1} << i)) {
        idx += (1 + ((bits >> i) & 1)) * pow3[static_cast<std::size_t>(i)];
      }
    }
    return idx;
  }

  int subcube_value(std::uint32_t fixed, std::uint32_t bits) {
    const std::uint32_t idx = encode(fixed, bits);
    if (val[idx] >= 0) return val[idx];
    const std::uint32_t full = static_cast<std::uint32_t>(f.points() - 1);
    int result;
    if (fixed == full) {
      result = f.value(bits);
    } else {
      const auto i = static_cast<std::uint32_t>(std::countr_one(fixed));  // lowest free var
      const std::uint32_t bit = std::uint32_t{1} << i;
      const int a = subcube_value(fixed | bit, bits);
      const int b = subcube_value(fixed | bit, bits | bit);
      result = (a == b) ? a : 2;
    }
    val[idx] = static_cast<std::int8_t>(result);
    return result;
  }

  int solve(std::uint32_t fixed, std::uint32_t bits) {
    const std::uint32_t idx = encode(fixed, bits);
    if (depth[idx] >= 0) return depth[idx];
    int result = 0;
    if (subcube_value(fixed, bits) == 2) {
      result = f.n();
      for (int i = 0; i < f.n(); ++i) {
        const std::uint32_t bit = std::uint32_t{1} << i;
        if (fixed & bit) continue;
        const int zero = solve(fixed | bit, bits);
        const int one = solve(fixed | bit, bits | bit);
        result = std::min(result, 1 + std::max(zero, one));
      }
    }
    depth[idx] = static_cast<std::int8_t>(result);
    return result;
  }
};

}  // namespace

int decision_tree_depth(const BooleanFunction& f) {
  if (f.n() > 14) throw ValidationError("decision_tree_depth: needs n <= 14");
  DepthSolver solver(f);
  return solver.solve(0, 0);
}

bool is_evasive(const BooleanFunction& f) {
  return decision_tree_depth(f) == f.n();
}

}  // namespace lastloc::theory
