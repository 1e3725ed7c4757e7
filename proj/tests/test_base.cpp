#include <set>
#include <vector>

#include "doctest.h"
#include "lastloc/base.hpp"

using namespace lastloc;

TEST_CASE("cell array write-once semantics") {
  CellArray v(4, 2);
  CHECK(v.n() == 4);
  CHECK(v.star_count() == 4);
  CHECK(!v.is_complete());

  v.set(2, 1);
  v.set(4, 2);
  CHECK(v.at(2) == 1);
  CHECK(v.at(4) == 2);
  CHECK(v.filled() == 2);
  CHECK(v.starred(1));
  CHECK(!v.starred(2));

  CHECK_THROWS_AS(v.set(2, 1), ValidationError);   // already written
  CHECK_THROWS_AS(v.set(1, 0), ValidationError);   // star is not writable
  CHECK_THROWS_AS(v.set(1, 3), ValidationError);   // outside the alphabet
  CHECK_THROWS_AS(v.set(0, 1), ValidationError);   // locations are 1-based
  CHECK_THROWS_AS(v.set(5, 1), ValidationError);

  const CellArray u = v.with(1, 2);
  CHECK(u.at(1) == 2);
  CHECK(v.starred(1));  // with() copies

  CHECK(v.star_locations() == std::vector<Location>{1, 3});
  CHECK(v.symbol_locations(2) == std::vector<Location>{4});
}

TEST_CASE("sole star") {
  CellArray v(3, 2);
  v.set(1, 1);
  CHECK_THROWS_AS(v.sole_star(), ContractError);
  v.set(3, 2);
  CHECK(v.sole_star() == 2);
  v.set(2, 1);
  CHECK_THROWS_AS(v.sole_star(), ContractError);
}

TEST_CASE("render and parse invert each other") {
  CellArray v(5, 2);
  v.set(1, 2);
  v.set(3, 1);
  CHECK(v.render() == "1*0**");
  CHECK(CellArray::parse("1*0**", 2) == v);

  CellArray wide(4, 5);
  wide.set(2, 5);
  wide.set(3, 1);
  CHECK(wide.render() == "*51*");
  CHECK(CellArray::parse("*51*", 5) == wide);

  CHECK_THROWS_AS(CellArray::parse("012", 2), ValidationError);  // '2' is not binary
}

TEST_CASE("packed round trip") {
  for (int n : {1, 3, 7, 16}) {
    CellArray v(n, 3);
    for (Location loc = 1; loc <= n; loc += 2) v.set(loc, static_cast<Symbol>(1 + loc % 3));
    CHECK(CellArray::unpack(v.packed(), n, 3) == v);
  }
  // Distinct arrays get distinct keys.
  std::set<std::uint64_t> keys;
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; b <= 2; ++b) {
      CellArray v(2, 2);
      if (a) v.set(1, static_cast<Symbol>(a));
      if (b) v.set(2, static_cast<Symbol>(b));
      keys.insert(v.packed());
    }
  }
  CHECK(keys.size() == 9);
}

TEST_CASE("mask helpers") {
  const CellArray v = CellArray::from_mask(0b101, 3);
  CHECK(v.render() == "101");
  CHECK(v.ones_mask() == 0b101);
}

TEST_CASE("bit and symbol conversions") {
  CHECK(bit_to_symbol(0) == 1);
  CHECK(bit_to_symbol(1) == 2);
  CHECK(symbol_to_bit(1) == 0);
  CHECK(symbol_to_bit(2) == 1);
  CHECK_THROWS_AS(bit_to_symbol(2), ValidationError);
  CHECK_THROWS_AS(symbol_to_bit(0), ValidationError);
}

TEST_CASE("permutation validation") {
  Permutation ok{{2, 3, 1}};
  ok.validate();
  CHECK(ok.last() == 1);
  CHECK(Permutation::identity(4).order == std::vector<Location>{1, 2, 3, 4});

  CHECK_THROWS_AS((Permutation{{1, 1, 2}}.validate()), ValidationError);
  CHECK_THROWS_AS((Permutation{{0, 1}}.validate()), ValidationError);
  CHECK_THROWS_AS((Permutation{{1, 3}}.validate()), ValidationError);
  CHECK_THROWS_AS((Permutation{{}}.validate()), ValidationError);
}

TEST_CASE("integer helpers") {
  CHECK(ceil_sqrt(1) == 1);
  CHECK(ceil_sqrt(2) == 2);
  CHECK(ceil_sqrt(4) == 2);
  CHECK(ceil_sqrt(5) == 3);
  CHECK(ceil_sqrt(9) == 3);
  CHECK(ceil_sqrt(10) == 4);
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(8) == 3);
  CHECK(ceil_log2(9) == 4);
}

TEST_CASE("rng streams are reproducible") {
  Rng a(7);
  Rng b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  Rng c(7);
  for (int i = 0; i < 1000; ++i) {
    const auto x = c.below(13);
    CHECK(x < 13);
  }
  CHECK(Rng::mix_seed(1, 2) == Rng::mix_seed(1, 2));
  CHECK(Rng::mix_seed(1, 2) != Rng::mix_seed(1, 3));
}

TEST_CASE("random permutations are uniform enough and valid") {
  Rng rng(42);
  std::set<std::vector<Location>> seen;
  for (int i = 0; i < 200; ++i) {
    const Permutation sigma = random_permutation(4, rng);
    sigma.validate();
    seen.insert(sigma.order);
  }
  CHECK(seen.size() == 24);  // all of S_4 shows up in 200 draws
}
