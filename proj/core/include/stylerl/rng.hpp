#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace stylerl {

// splitmix64 finalizer (Vigna). Used to expand seeds and derive stream keys.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Deterministic RNG wrapper. std::mt19937_64 output is pinned by the standard;
// the draw helpers are hand-rolled because std::uniform_*_distribution and
// std::shuffle are implementation-defined and would silently break
// reproducibility across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double next_double(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // Unbiased uniform integer in [0, n). Rejection sampling; n must be > 0.
  std::uint64_t next_below(std::uint64_t n);

  // Fisher-Yates, driven by next_below for portability.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(next_below(i))]);
    }
  }

  // Draws an index distributed according to `weights` (non-negative, not all
  // zero). Cumulative-sum walk; the last index absorbs rounding spill.
  int categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

// Stable sub-stream derivation from (seed, tag, a, b). Streams for distinct
// inputs are independent for all practical purposes; identical inputs always
// yield the identical stream, which is what checkpoint resume relies on.
Rng derive_stream(std::uint64_t seed, std::string_view tag, std::uint64_t a = 0,
                  std::uint64_t b = 0);

}  // namespace stylerl
