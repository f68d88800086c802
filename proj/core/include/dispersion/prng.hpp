#pragma once

#include <cstdint>
#include <limits>

namespace dispersion {

/// SplitMix64: a 64-bit counter advanced by the golden-ratio increment and
/// passed through a fixed bijective finalizer. The full stream is a pure
/// function of the seed, so ports in other languages reproduce it exactly.
/// docs/prng.md gives the reference definition and the derived samplers.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGamma;
    return mix(state_);
  }
  constexpr std::uint64_t operator()() noexcept { return next(); }

  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return std::numeric_limits<std::uint64_t>::max(); }

  /// Uniform integer in [0, bound), bound >= 1. Rejection sampling on the
  /// largest multiple of `bound` below 2^64 keeps the draw unbiased.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = max() - max() % bound;  // draws >= limit are rejected
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % bound;
  }

  /// Independent child stream; the parent advances by one step.
  constexpr SplitMix64 split() noexcept { return SplitMix64(next()); }

  [[nodiscard]] constexpr std::uint64_t state() const noexcept { return state_; }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// In-place Fisher-Yates shuffle driven by SplitMix64::below, from the back.
template <typename It>
void shuffle(It first, It last, SplitMix64& rng) {
  auto n = static_cast<std::uint64_t>(last - first);
  while (n > 1) {
    const std::uint64_t j = rng.below(n);
    --n;
    using std::swap;
    swap(first[n], first[j]);
  }
}

}  // namespace dispersion
