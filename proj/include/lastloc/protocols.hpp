#ifndef LASTLOC_PROTOCOLS_HPP
#define LASTLOC_PROTOCOLS_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lastloc/codes.hpp"
#include "lastloc/game.hpp"

namespace lastloc::protocols {

// Contiguous chunks {1..k}, {k+1..2k}, ...; the last may run short, so
// there are ceil(n/k) blocks.
struct BlockPartition {
  int n = 0;
  int block = 0;

  BlockPartition(int n_cells, int block_size);
  int block_count() const;
  int block_of(Location l) const;  // 1-based
  std::vector<Location> members(int block_index) const;
};

// Square-block writer: a cell gets '1' exactly when it is the last of
// its ceil(sqrt(n))-sized block to arrive. The decoder returns the one
// all-'0' block if present, otherwise the '1' positions. Cost is
// ceil(sqrt(n)).
Protocol and_or_protocol(int n);

// The constant writer: '0' at every step. The decoder can only point at
// a lone '1' and must answer [n] otherwise; its mean output size is
// (n+1)/2, which is what makes the average-case question interesting.
Protocol zeros_protocol(int n);

struct SyndromeParams {
  int n = 0;
  int t = 0;  // 0 picks min(k^2, n-1)

  int k() const;            // label width: ceil(log2 n)
  int effective_t() const;  // validated tail length, k < t <= n
};

// Label-sum writer: '0' for the first n-t arrivals, then the canonical
// zero-syndrome completion of the current array decides every later
// bit. Order-oblivious; its value is a conditional entropy of the last
// location around loglog(n) rather than a small worst-case cost. The
// bundled decoder is a diagnostic; costs come from the canonical one.
Protocol syndrome_protocol(const SyndromeParams& params);

// Builds the code used at one recursion level of the iterated protocol.
using CodeProvider = std::function<std::shared_ptr<const codes::DeletionCode>(
    int length, std::size_t min_size, int deletions)>;

struct IteratedParams {
  int j = 1;
  int n = 0;
  int k0 = 16;
  // Replaces the honest deletion budget of every level below j. Lets the
  // j >= 2 structure run at toy sizes where honest budgets exceed any
  // searchable code; decoding those levels then legitimately fails over
  // to [n].
  std::optional<int> deletion_budget;

  bool trivial() const { return n <= k0; }
  // t[0] = n, t[i] = max(k0, ceil(4 log2 t[i-1])), strictly decreasing.
  std::vector<int> schedule() const;
};

// Alphabet {1..2j+1}. Arrivals fall into count phases: phase 0 writes
// the filler 2j+1, phase p encodes which cells were still unwritten when
// the phase began, as a deletion-code word over symbols 2(j-p)+1/2(j-p)+2
// indexed by rank. The decoder spots the phase whose symbol count runs
// one over, recurses for p >= 1, and deletion-decodes at p = 0; any
// off-path shape falls back to [n].
Protocol iterated_protocol(const IteratedParams& params, CodeProvider provider = {});

struct BlockCodeParams {
  int n = 0;
  double theta = 0.8;  // tail fraction target: m = k^2 >= theta * n
  std::uint64_t seed = 1;
  int retries = 200;

  int k() const;  // least k with k^2 >= theta * n
  int m() const;  // k^2, must fit in n
};

// Tail-code writer: '0' for the first n-m arrivals, then the codeword of
// the tail set with each block's last arrival flipped. Needs the arrival
// history (codeword zeros are indistinguishable from early zeros), so it
// is deliberately not order-oblivious. The decoder finds the nearest
// codeword and returns the one clean block or the disagreement set; cost
// k beats the sqrt(n) mark when the underlying code meets distance 2k+1.
Protocol block_code_protocol(const BlockCodeParams& params);

// Name-keyed construction for the CLI: and_or | zeros | syndrome |
// iterated | block_code, options as the corresponding parameter fields.
Protocol make_protocol(const std::string& name, const nlohmann::json& options);

// Every protocol this toolkit can build at this n with default
// parameters; the sweep set for whole-family checks.
std::vector<Protocol> catalog(int n);

}  // namespace lastloc::protocols

#endif  // LASTLOC_PROTOCOLS_HPP
