#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "lastloc/game.hpp"

namespace lastloc {

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// sum over arrays of sum over locations of c * log2(total/c), in bits,
// divided by the grand total. Keys are visited in sorted order so the
// float accumulation is reproducible run to run.
template <typename Key>
double plugin_conditional_entropy(const std::map<Key, std::vector<std::uint64_t>>& buckets,
                                  std::uint64_t grand_total) {
  long double acc = 0.0L;
  for (const auto& [key, counts] : buckets) {
    (void)key;
    const std::uint64_t total =
        std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    for (std::uint64_t c : counts) {
      if (c == 0) continue;
      acc += static_cast<long double>(c) *
             std::log2(static_cast<long double>(total) / static_cast<long double>(c));
    }
  }
  return static_cast<double>(acc / static_cast<long double>(grand_total));
}

}  // namespace

void Fraction::normalize() {
  if (den == 0) throw ValidationError("Fraction: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

ExpectedCostResult expected_cost(const Protocol& p, const ExecConfig& cfg) {
  const auto counts = sweep_edge_multiplicities(p, cfg, cfg.limits.entropy);
  EdgeGraph graph(p.n, p.w);
  for (const auto& [key, c] : counts) {
    (void)c;
    graph.add_edge(key);
  }
  graph.finalize();

  // |J| for a final array equals its vertex degree, so the mean over all
  // (sigma, b) collapses to degree lookups weighted by edge multiplicity.
  std::uint64_t total = 0;
  for (const auto& [key, c] : counts) {
    for (Symbol s = 1; s <= p.w; ++s) {
      total += c * static_cast<std::uint64_t>(graph.vertex_degree(packed_complete(key, p.n, s)));
    }
  }
  const std::uint64_t runs = factorial(p.n) * static_cast<std::uint64_t>(p.w);
  ExpectedCostResult out;
  out.exact = Fraction{static_cast<long long>(total), static_cast<long long>(runs)};
  out.exact.normalize();
  out.estimate = out.exact.value();
  out.exhaustive = true;
  out.samples = runs;
  return out;
}

ExpectedCostResult expected_cost_mc(const Protocol& p, std::uint64_t trials,
                                    std::uint64_t seed, const ExecConfig& cfg) {
  if (trials == 0) throw ValidationError("expected_cost_mc: needs at least one trial");
  EdgeGraph graph = enumerate_edge_graph(p, cfg);
  Rng rng(seed);
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const Permutation sigma = random_permutation(p.n, rng);
    const Symbol b = static_cast<Symbol>(1 + rng.below(static_cast<std::uint64_t>(p.w)));
    const GameRunRecord rec = run_protocol(p, sigma, b);
    total += static_cast<std::uint64_t>(graph.vertex_degree(rec.final_array.packed()));
  }
  ExpectedCostResult out;
  out.estimate = static_cast<double>(total) / static_cast<double>(trials);
  out.exhaustive = false;
  out.samples = trials;
  return out;
}

EntropyResult conditional_entropy(const Protocol& p, const ExecConfig& cfg) {
  const auto counts = sweep_edge_multiplicities(p, cfg, cfg.limits.entropy);
  // buckets[final array][last location - 1] = number of (sigma, b) runs
  std::map<std::uint64_t, std::vector<std::uint64_t>> buckets;
  for (const auto& [key, c] : counts) {
    const Location star = packed_star_location(key, p.n);
    for (Symbol s = 1; s <= p.w; ++s) {
      auto& slot = buckets[packed_complete(key, p.n, s)];
      if (slot.empty()) slot.assign(static_cast<std::size_t>(p.n), 0);
      slot[static_cast<std::size_t>(star - 1)] += c;
    }
  }
  const std::uint64_t runs = factorial(p.n) * static_cast<std::uint64_t>(p.w);
  EntropyResult out;
  out.bits = plugin_conditional_entropy(buckets, runs);
  out.exhaustive = true;
  out.plugin_biased = false;
  out.samples = runs;
  out.distinct_arrays = buckets.size();
  return out;
}

EntropyResult conditional_entropy_mc(const Protocol& p, std::uint64_t trials,
                                     std::uint64_t seed) {
  if (trials == 0) throw ValidationError("conditional_entropy_mc: needs at least one trial");
  Rng rng(seed);
  // Rendered-string keys keep this usable past the packed-array range.
  std::map<std::string, std::vector<std::uint64_t>> buckets;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const Permutation sigma = random_permutation(p.n, rng);
    const Symbol b = static_cast<Symbol>(1 + rng.below(static_cast<std::uint64_t>(p.w)));
    const GameRunRecord rec = run_protocol(p, sigma, b);
    auto& slot = buckets[rec.final_array.render()];
    if (slot.empty()) slot.assign(static_cast<std::size_t>(p.n), 0);
    slot[static_cast<std::size_t>(sigma.last() - 1)] += 1;
  }
  EntropyResult out;
  out.bits = plugin_conditional_entropy(buckets, trials);
  out.exhaustive = false;
  out.plugin_biased = true;
  out.samples = trials;
  out.distinct_arrays = buckets.size();
  return out;
}

}  // namespace lastloc
