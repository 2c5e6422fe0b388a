#pragma once

#include <cstdint>

namespace polars {

// SplitMix64 (Steele, Lea & Flood 2014). Counter-based: output k of a stream
// is mix(state0 + (k + 1) * gamma), so any element can be recomputed without
// replaying the stream. split(i) derives an independent child stream.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  SplitMix64 split(std::uint64_t stream) const noexcept {
    return SplitMix64(mix(state_ ^ mix(stream + kGamma)));
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, bound), unbiased by rejection. bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t v = next();
      if (v >= threshold) return v % bound;
    }
  }

  // Standard normal via Box-Muller (one draw per call, second discarded).
  double normal() noexcept;

 private:
  std::uint64_t state_;
};

}  // namespace polars
