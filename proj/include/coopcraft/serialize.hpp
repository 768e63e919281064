#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coopcraft/env.hpp"
#include "coopcraft/state.hpp"

namespace coopcraft {

// 64-bit FNV-1a, used for trajectory and state checksums.
class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001B3ULL;
    }
  }
  template <typename T>
  void value(const T& v) {
    bytes(&v, sizeof(T));
  }
  std::uint64_t digest() const { return h_; }

 private:
  std::uint64_t h_ = 0xCBF29CE484222325ULL;
};

// Canonical little-endian byte image of the full state. Equal states give
// equal bytes; padding never leaks in.
std::vector<std::uint8_t> serialize_state(const WorldState& state);

std::uint64_t state_hash(const WorldState& state);

// Hash of everything a step reports: rewards, flags, info and observations.
std::uint64_t result_hash(const StepResult& result, std::span<const float> observations);

std::string hex64(std::uint64_t v);

}  // namespace coopcraft
