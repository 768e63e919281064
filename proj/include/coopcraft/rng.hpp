#pragma once

#include <cstdint>

namespace coopcraft {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based generator: output n is a pure function of (key, n), so a
// stream can be split into independent children without touching its parent.
class RngState {
 public:
  constexpr RngState() = default;
  constexpr explicit RngState(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix64(seed ^ mix64(stream + 0x6A09E667F3BCC909ULL))) {}

  constexpr RngState split(std::uint64_t tag) const {
    RngState child;
    child.key_ = mix64(key_ ^ mix64(tag ^ 0x3C6EF372FE94F82BULL));
    return child;
  }

  constexpr std::uint64_t next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  // Uniform in [0, n). n must be positive.
  constexpr std::uint32_t uniform(std::uint32_t n) {
    return static_cast<std::uint32_t>(((next_u64() >> 32) * static_cast<std::uint64_t>(n)) >> 32);
  }

  constexpr float uniform01() { return static_cast<float>(next_u64() >> 40) * (1.0f / 16777216.0f); }

  constexpr bool bernoulli(float p) { return uniform01() < p; }

  constexpr std::uint64_t key() const { return key_; }
  constexpr std::uint64_t counter() const { return counter_; }

  friend constexpr bool operator==(const RngState&, const RngState&) = default;

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

// Subsystem tags for per-step child streams.
enum class RngStream : std::uint64_t { WorldGen = 1, World = 2, Actions = 3, Policy = 4, Reseed = 5 };

inline constexpr RngState stream_for(RngState root, std::int64_t step, RngStream subsystem) {
  return root.split(static_cast<std::uint64_t>(step)).split(static_cast<std::uint64_t>(subsystem));
}

}  // namespace coopcraft
