#include "bnet/rng.hpp"

#include <stdexcept>

namespace bnet {

namespace {
// splitmix64; also used to decorrelate substream seeds.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t Rng::next_u64() {
  std::uint64_t out = mix(state_);
  state_ += 0x9e3779b97f4a7c15ULL;
  return out;
}

double Rng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("next_below: zero bound");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t draw;
  do {
    draw = next_u64();
  } while (draw >= limit);
  return draw % bound;
}

int Rng::sample_discrete(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("sample_discrete: negative weight");
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("sample_discrete: zero total weight");
  double u = next_unit() * total;
  double cum = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    cum += weights[k];
    if (u < cum) return static_cast<int>(k);
  }
  return static_cast<int>(weights.size()) - 1;  // guard against rounding
}

void Rng::shuffle(std::span<int> values) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(next_below(i));
    std::swap(values[i - 1], values[j]);
  }
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t k) {
  return mix(seed ^ mix(k + 1));
}

}  // namespace bnet
