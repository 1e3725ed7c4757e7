#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "lastloc/codes.hpp"
#include "oracles.hpp"

using namespace lastloc;
using namespace lastloc::codes;

TEST_CASE("location labels") {
  CHECK(index_bits(2) == 1);
  CHECK(index_bits(3) == 2);
  CHECK(index_bits(4) == 2);
  CHECK(index_bits(8) == 3);
  CHECK(index_bits(9) == 4);
  CHECK(index_vector(5, 3) == 0b101);
  CHECK(index_vector(8, 3) == 0);  // 2^k masks to zero
  CHECK(index_vector(3, 2) == 0b11);
}

TEST_CASE("gamma is the parity label of the one cells") {
  for (int n : {2, 3, 4, 6, 8}) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const CellArray v = CellArray::from_mask(mask, n);
      CHECK(gamma(v) == oracle::parity_label(v));
    }
  }
  // Stars contribute nothing.
  CellArray v(4, 2);
  v.set(2, 2);
  CHECK(gamma(v) == index_vector(2, 2));
}

TEST_CASE("canonical completion matches exhaustive search") {
  for (int n : {2, 3, 4, 6}) {
    // Every partial binary array over n cells, as a base-3 counter.
    std::vector<CellArray> states;
    int total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (int key = 0; key < total; ++key) {
      int x = key;
      CellArray v(n, 2);
      for (Location loc = 1; loc <= n; ++loc) {
        const int digit = x % 3;
        x /= 3;
        if (digit != 0) v.set(loc, static_cast<Symbol>(digit));
      }
      states.push_back(v);
    }
    for (const CellArray& v : states) {
      const auto ref = oracle::completion(v);
      CHECK(admissible(v) == ref.exists);
      if (!ref.exists) {
        CHECK_THROWS_AS(canonical_completion(v), InadmissibleError);
        continue;
      }
      const auto got = canonical_completion(v);
      CHECK(got.output.render() == ref.output);
      CHECK(got.zero_set == ref.zero_set);
      CHECK(gamma(got.output) == 0);
      CHECK(got.zero_set.size() <= static_cast<std::size_t>(index_bits(n)));
    }
  }
}

TEST_CASE("vt code enumerates the syndrome class in order") {
  for (int t : {3, 5, 8, 10}) {
    for (int residue : {0, 1, t / 2}) {
      const auto ref = oracle::vt_words(t, residue);
      CHECK(VtCode::exact_count(t, residue) == ref.size());
      const VtCode code(t, residue, ref.size());
      CHECK(code.size() == ref.size());
      CHECK(code.words() == ref);
      for (std::uint64_t w : code.words()) {
        int sum = 0;
        for (int i = 1; i <= t; ++i) sum += ((w >> (i - 1)) & 1) ? i : 0;
        CHECK(sum % (t + 1) == residue);
        CHECK(VtCode::syndrome(w, t) == sum % (t + 1));
      }
    }
  }
}

TEST_CASE("vt code corrects every single deletion") {
  for (int t : {4, 6, 9}) {
    const VtCode code(t, 0, VtCode::exact_count(t, 0));
    for (std::size_t idx = 0; idx < code.size(); ++idx) {
      const auto bits = code.codeword(idx);
      CHECK(bits == oracle::word_bits(code.words()[idx], t));
      for (std::size_t pos = 0; pos < bits.size(); ++pos) {
        CHECK(code.decode_index(oracle::drop_position(bits, pos)) == idx);
      }
    }
  }
}

TEST_CASE("vt code size limits") {
  CHECK_THROWS_AS(VtCode(4, 0, 100), InfeasibleError);
  CHECK_THROWS_AS(VtCode(4, 0, 0), ValidationError);
  // A requested prefix materializes only that many words.
  const VtCode code(10, 0, 5);
  CHECK(code.size() == 5);
  const auto all = oracle::vt_words(10, 0);
  CHECK(std::equal(code.words().begin(), code.words().end(), all.begin()));
}

TEST_CASE("greedy deletion code separates and decodes") {
  for (auto [k, d] : std::vector<std::pair<int, int>>{{6, 1}, {6, 2}, {8, 2}}) {
    const GreedyDeletionCode code(k, d);
    CHECK(code.size() >= 2);
    for (std::size_t i = 0; i < code.size(); ++i) {
      for (std::size_t j = i + 1; j < code.size(); ++j) {
        CHECK(oracle::lcs(code.words()[i], code.words()[j], k) < k - d);
      }
    }
    // Greedy maximality: every outside word collides with a member.
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << k); ++w) {
      if (std::find(code.words().begin(), code.words().end(), w) != code.words().end()) {
        continue;
      }
      bool collides = false;
      for (std::uint64_t member : code.words()) {
        if (oracle::lcs(w, member, k) >= k - d) {
          collides = true;
          break;
        }
      }
      CHECK(collides);
    }
  }
}

TEST_CASE("greedy deletion code round trip") {
  const int k = 7;
  const int d = 2;
  const GreedyDeletionCode code(k, d);
  for (std::size_t idx = 0; idx < code.size(); ++idx) {
    const auto bits = code.codeword(idx);
    for (std::size_t a = 0; a < bits.size(); ++a) {
      const auto once = oracle::drop_position(bits, a);
      CHECK(code.decode_index(once) == idx);
      for (std::size_t b = 0; b < once.size(); ++b) {
        CHECK(code.decode_index(oracle::drop_position(once, b)) == idx);
      }
    }
  }
  CHECK_THROWS_AS(GreedyDeletionCode(13, 1), ValidationError);
}

TEST_CASE("symmetric difference coloring") {
  for (int n : {3, 4, 5, 6}) {
    std::vector<std::vector<int>> subsets;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> s;
      for (int i = 1; i <= n; ++i) {
        if ((mask >> (i - 1)) & 1) s.push_back(i);
      }
      subsets.push_back(std::move(s));
    }
    for (const auto& s : subsets) {
      const int c = symdiff_color(s, n);
      CHECK(c >= 0);
      CHECK(c < 3 * n);
      for (const auto& u : subsets) {
        std::vector<int> diff;
        std::set_symmetric_difference(s.begin(), s.end(), u.begin(), u.end(),
                                      std::back_inserter(diff));
        if (diff.size() == 1 || diff.size() == 2) {
          CHECK(symdiff_color(u, n) != c);
        }
      }
    }
  }
}

TEST_CASE("proper code structure") {
  const ProperCode code(12, 9, 5, 7, 200);
  CHECK(code.n() == 12);
  CHECK(code.m() == 9);
  CHECK(code.size() == 220);  // C(12, 9) supports, one word each

  std::set<std::vector<Location>> supports;
  std::vector<std::vector<int>> bits(code.size(), std::vector<int>(code.n(), 0));
  for (std::size_t idx = 0; idx < code.size(); ++idx) {
    const auto& sup = code.support(idx);
    CHECK(sup.size() == 9);
    CHECK(std::is_sorted(sup.begin(), sup.end()));
    supports.insert(sup);
    CHECK(code.support_index(sup) == idx);
    for (Location loc : sup) {
      const int b = code.embedded_bit(idx, loc);
      CHECK((b == 0 || b == 1));
      bits[idx][loc - 1] = b;  // the full word is zero off the support
    }
  }
  CHECK(supports.size() == code.size());

  int min_distance = code.n() + 1;
  for (std::size_t i = 0; i < code.size(); ++i) {
    for (std::size_t j = i + 1; j < code.size(); ++j) {
      int dist = 0;
      for (int c = 0; c < code.n(); ++c) dist += bits[i][c] != bits[j][c] ? 1 : 0;
      min_distance = std::min(min_distance, dist);
    }
  }
  CHECK(code.distance() == min_distance);
  CHECK(code.met_target() == (code.distance() >= code.target_distance()));

  if (code.distance() >= 1) {
    // Words are distinct, so an exact codeword decodes to itself alone.
    for (std::size_t idx = 0; idx < code.size(); idx += 37) {
      const auto hit = code.nearest(bits[idx]);
      CHECK(hit.index == idx);
      CHECK(hit.distance == 0);
      CHECK(!hit.ambiguous);
    }
  }

  // Same parameters rebuild the same code.
  const ProperCode again(12, 9, 5, 7, 200);
  CHECK(again.distance() == code.distance());
  CHECK(again.attempts_used() == code.attempts_used());
  for (std::size_t idx = 0; idx < code.size(); idx += 13) {
    CHECK(again.support(idx) == code.support(idx));
    for (Location loc : code.support(idx)) {
      CHECK(again.embedded_bit(idx, loc) == code.embedded_bit(idx, loc));
    }
  }
}

TEST_CASE("proper code separation at block parameters") {
  // The pair (n, m) = (18, 16) mirrors the shape the tail protocol uses:
  // C(18, 16) = 153 supports, target distance 2 * ceil_sqrt(16) + 1 = 9.
  const ProperCode code(18, 16, 1, 9, 200);
  CHECK(code.size() == 153);
  if (code.met_target()) {
    CHECK(code.distance() >= 9);
    // Any word within radius (d-1)/2 of a codeword decodes to it.
    const int radius = (code.distance() - 1) / 2;
    std::vector<int> word(18, 0);
    for (Location loc : code.support(40)) word[loc - 1] = code.embedded_bit(40, loc);
    word[2] ^= 1;
    if (radius >= 1) {
      const auto hit = code.nearest(word);
      CHECK(hit.index == 40);
      CHECK(hit.distance == 1);
      CHECK(!hit.ambiguous);
    }
  }
}
