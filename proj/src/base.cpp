#include "lastloc/base.hpp"

#include <algorithm>
#include <numeric>

namespace lastloc {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw ValidationError("Rng::below: bound must be positive");
  // Rejection keeps the draw exactly uniform for any bound.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % bound;
}

std::uint64_t Rng::mix_seed(std::uint64_t seed, std::uint64_t salt) {
  Rng r(seed ^ (salt * 0x9e3779b97f4a7c15ULL));
  r.next();
  return r.next();
}

CellArray::CellArray(int n, int w) : n_(n), w_(w), filled_(0) {
  if (n < 1) throw ValidationError("CellArray: n must be at least 1");
  if (w < 2) throw ValidationError("CellArray: alphabet needs w >= 2");
  cells_.assign(static_cast<std::size_t>(n), kStar);
}

Symbol CellArray::at(Location loc) const {
  if (loc < 1 || loc > n_) throw ValidationError("CellArray: location out of range");
  return cells_[static_cast<std::size_t>(loc - 1)];
}

void CellArray::set(Location loc, Symbol s) {
  if (loc < 1 || loc > n_) throw ValidationError("CellArray: location out of range");
  if (s == kStar || s > w_) throw ValidationError("CellArray: symbol out of range");
  Symbol& cell = cells_[static_cast<std::size_t>(loc - 1)];
  if (cell != kStar) throw ValidationError("CellArray: cell already written");
  cell = s;
  ++filled_;
}

CellArray CellArray::with(Location loc, Symbol s) const {
  CellArray copy = *this;
  copy.set(loc, s);
  return copy;
}

Location CellArray::sole_star() const {
  if (star_count() != 1) throw ContractError("sole_star: star count is not 1");
  for (Location loc = 1; loc <= n_; ++loc) {
    if (starred(loc)) return loc;
  }
  throw ContractError("sole_star: inconsistent fill count");
}

std::vector<Location> CellArray::star_locations() const {
  std::vector<Location> out;
  for (Location loc = 1; loc <= n_; ++loc) {
    if (starred(loc)) out.push_back(loc);
  }
  return out;
}

std::vector<Location> CellArray::symbol_locations(Symbol s) const {
  std::vector<Location> out;
  for (Location loc = 1; loc <= n_; ++loc) {
    if (at(loc) == s) out.push_back(loc);
  }
  return out;
}

std::uint64_t CellArray::packed() const {
  if (n_ > 16) throw ValidationError("packed: needs n <= 16");
  if (w_ > 15) throw ValidationError("packed: needs w <= 15");
  std::uint64_t key = 0;
  for (int i = n_ - 1; i >= 0; --i) {
    key = (key << 4) | cells_[static_cast<std::size_t>(i)];
  }
  return key;
}

CellArray CellArray::unpack(std::uint64_t key, int n, int w) {
  CellArray a(n, w);
  for (Location loc = 1; loc <= n; ++loc) {
    const Symbol s = static_cast<Symbol>(key & 0xF);
    key >>= 4;
    if (s != kStar) a.set(loc, s);
  }
  if (key != 0) throw ValidationError("unpack: key has bits past cell n");
  return a;
}

std::string CellArray::render() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(n_));
  for (Symbol s : cells_) {
    if (s == kStar) {
      out.push_back('*');
    } else if (w_ == 2) {
      out.push_back(static_cast<char>('0' + (s - 1)));
    } else {
      if (s > 9) throw ValidationError("render: symbols past 9 have no digit form");
      out.push_back(static_cast<char>('0' + s));
    }
  }
  return out;
}

CellArray CellArray::parse(const std::string& text, int w) {
  if (text.empty()) throw ValidationError("parse: empty array text");
  CellArray a(static_cast<int>(text.size()), w);
  for (Location loc = 1; loc <= a.n(); ++loc) {
    const char c = text[static_cast<std::size_t>(loc - 1)];
    if (c == '*') continue;
    if (c < '0' || c > '9') throw ValidationError("parse: unexpected character");
    const int digit = c - '0';
    const int symbol = (w == 2) ? digit + 1 : digit;
    if (symbol < 1 || symbol > w) throw ValidationError("parse: symbol out of range");
    a.set(loc, static_cast<Symbol>(symbol));
  }
  return a;
}

CellArray CellArray::from_mask(std::uint64_t mask, int n) {
  if (n < 1 || n > 63) throw ValidationError("from_mask: needs 1 <= n <= 63");
  if (mask >> n) throw ValidationError("from_mask: mask has bits past cell n");
  CellArray a(n, 2);
  for (Location loc = 1; loc <= n; ++loc) {
    a.set(loc, bit_to_symbol(static_cast<int>((mask >> (loc - 1)) & 1)));
  }
  return a;
}

std::uint64_t CellArray::ones_mask() const {
  if (w_ != 2) throw ValidationError("ones_mask: binary arrays only");
  if (!is_complete()) throw ValidationError("ones_mask: array has unwritten cells");
  std::uint64_t mask = 0;
  for (Location loc = 1; loc <= n_; ++loc) {
    if (at(loc) == 2) mask |= std::uint64_t{1} << (loc - 1);
  }
  return mask;
}

Location Permutation::last() const {
  if (order.empty()) throw ValidationError("Permutation: empty order");
  return order.back();
}

void Permutation::validate() const {
  const int size = n();
  if (size < 1) throw ValidationError("Permutation: empty order");
  std::vector<bool> seen(static_cast<std::size_t>(size) + 1, false);
  for (Location loc : order) {
    if (loc < 1 || loc > size) throw ValidationError("Permutation: location out of range");
    if (seen[static_cast<std::size_t>(loc)]) throw ValidationError("Permutation: repeated location");
    seen[static_cast<std::size_t>(loc)] = true;
  }
}

Permutation Permutation::identity(int n) {
  if (n < 1) throw ValidationError("Permutation: n must be at least 1");
  Permutation p;
  p.order.resize(static_cast<std::size_t>(n));
  std::iota(p.order.begin(), p.order.end(), 1);
  return p;
}

Permutation random_permutation(int n, Rng& rng) {
  Permutation p = Permutation::identity(n);
  // Fisher-Yates with the shared splitmix stream keeps draws portable.
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(p.order[static_cast<std::size_t>(i)], p.order[static_cast<std::size_t>(j)]);
  }
  return p;
}

int ceil_sqrt(int n) {
  if (n < 1) throw ValidationError("ceil_sqrt: n must be at least 1");
  int k = 1;
  while (k * k < n) ++k;
  return k;
}

int ceil_log2(int n) {
  if (n < 1) throw ValidationError("ceil_log2: n must be at least 1");
  int k = 0;
  while ((std::uint64_t{1} << k) < static_cast<std::uint64_t>(n)) ++k;
  return k;
}

}  // namespace lastloc
