#include "stylerl/rng.hpp"

#include <stdexcept>

namespace stylerl {

std::uint64_t Rng::next_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::next_below: n must be > 0");
  // Classic rejection against the largest multiple of n that fits in 64 bits.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

int Rng::categorical(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("Rng::categorical: negative weight");
    total += w;
  }
  if (!(total > 0.0)) {
    throw std::invalid_argument("Rng::categorical: weights sum to zero");
  }
  const double r = next_double() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (r < acc) return static_cast<int>(i);
  }
  return static_cast<int>(weights.size() - 1);
}

Rng derive_stream(std::uint64_t seed, std::string_view tag, std::uint64_t a,
                  std::uint64_t b) {
  std::uint64_t x = splitmix64(seed ^ fnv1a64(tag));
  x = splitmix64(x ^ a);
  x = splitmix64(x ^ b);
  return Rng(x);
}

}  // namespace stylerl
