#pragma once

#include <cstdint>

namespace mfgprep {

__extension__ using uint128_t = unsigned __int128;

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += kGoldenGamma;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Folds a sequence of words into one stream key.
constexpr std::uint64_t derive_key(std::uint64_t seed) noexcept {
  return splitmix64(seed);
}
template <class... Rest>
constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t next,
                                   Rest... rest) noexcept {
  return derive_key(splitmix64(seed) ^ (next * 0xD6E8FEB86659FD93ULL + 0x2545F4914F6CDD1DULL),
                    rest...);
}

/// Counter-based random stream: value i is a pure function of (key, i).
///
/// Sampling streams are keyed by (global seed, batch, hop, destination
/// position), so results never depend on which thread draws them or in
/// what order batches are scheduled.
class CounterRng {
 public:
  constexpr explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  static constexpr CounterRng for_sample(std::uint64_t global_seed, std::uint64_t batch_id,
                                         std::uint64_t hop, std::uint64_t dst_position) noexcept {
    return CounterRng(derive_key(global_seed, batch_id, hop, dst_position));
  }

  constexpr std::uint64_t next() noexcept {
    ++counter_;
    return splitmix64(key_ ^ splitmix64(counter_ * kGoldenGamma));
  }

  /// Unbiased integer in [0, bound); bound must be nonzero.
  std::uint64_t uniform(std::uint64_t bound) noexcept {
    std::uint64_t x = next();
    auto m = static_cast<uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = next();
        m = static_cast<uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform_real() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Number of raw 64-bit draws consumed so far.
  constexpr std::uint64_t draws() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace mfgprep
