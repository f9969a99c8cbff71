#pragma once

#include <cstdint>
#include <span>

namespace bnet {

/// Seedable 64-bit generator (xorshift-free splitmix64 state advance).
/// All randomized components in the library draw through this type so that
/// results are reproducible across platforms and builds. Parallel chains
/// use the documented splitting rule: substream k of seed s is seeded with
/// substream_seed(s, k).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // U(0,1) with 53 random bits; never returns 1.0.
  double next_unit();

  // Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t next_below(std::uint64_t bound);

  // Index k with probability weights[k] / sum(weights). Weights must be
  // nonnegative with a positive sum.
  int sample_discrete(std::span<const double> weights);

  // In-place Fisher-Yates shuffle.
  void shuffle(std::span<int> values);

 private:
  std::uint64_t state_;
};

// Seed for the k-th parallel substream of a base seed.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t k);

}  // namespace bnet
