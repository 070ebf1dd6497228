#pragma once

#include <cstdint>
#include <span>

#include "mfgprep/rng.hpp"

namespace mfgprep {

/// Order-sensitive 64-bit structural hasher used for digests and checksums.
class Hasher {
 public:
  void add(std::uint64_t word) noexcept {
    state_ = splitmix64(state_ ^ word) + 0x632BE59BD9B4E019ULL;
    ++words_;
  }
  template <class T>
  void add_range(std::span<const T> values) noexcept {
    add(values.size());
    for (const T& v : values) add(static_cast<std::uint64_t>(v));
  }
  std::uint64_t value() const noexcept { return splitmix64(state_ ^ words_); }

 private:
  std::uint64_t state_ = 0x243F6A8885A308D3ULL;
  std::uint64_t words_ = 0;
};

}  // namespace mfgprep
