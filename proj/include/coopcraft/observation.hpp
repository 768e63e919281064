#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coopcraft/config.hpp"
#include "coopcraft/state.hpp"

namespace coopcraft {

inline constexpr float kDarknessThreshold = 0.3f;
// Tile one-hot has one extra channel for cells hidden by darkness.
inline constexpr int kTileChannels = kNumTileKinds + 1;
inline constexpr int kDarkChannel = kNumTileKinds;
inline constexpr int kItemMapChannels = 3;  // torch, ladder down, ladder up
// Off-screen bearing: 8 compass points, "none" (on screen), below, above.
inline constexpr int kBearingChannels = 11;
inline constexpr int kBearingNone = 8;
inline constexpr int kBearingBelow = 9;
inline constexpr int kBearingAbove = 10;
inline constexpr int kRequestChannels = kNumTradableResources + 1;

struct ObsSlice {
  std::string name;
  std::size_t offset = 0;
  std::size_t length = 0;
  std::vector<int> shape;
};

// Names of the normalised inventory entries, and their divisors.
struct InventoryFeature {
  std::string name;
  float cap;
};
const std::vector<InventoryFeature>& inventory_features();

class ObsLayout {
 public:
  ObsLayout() = default;
  explicit ObsLayout(const EnvConfig& config);

  std::size_t total() const { return total_; }
  const std::vector<ObsSlice>& slices() const { return slices_; }
  const ObsSlice& slice(std::string_view name) const;
  std::optional<std::size_t> find(std::string_view name) const;

  // Offsets resolved once for the encoder hot path.
  struct Offsets {
    std::size_t tiles, mobs, items, inventory, meters, specialization, facing, floor, light, sleeping;
    std::size_t teammates, teammate_stride;
    std::size_t tm_position, tm_health, tm_specialization, tm_bearing, tm_request, tm_alive;
  };
  const Offsets& offsets() const { return off_; }
  bool coop() const { return coop_; }
  int window_height() const { return window_h_; }
  int window_width() const { return window_w_; }
  int n_floors() const { return n_floors_; }
  int n_agents() const { return n_agents_; }
  float max_health() const { return max_health_; }
  float max_energy() const { return max_energy_; }

 private:
  std::size_t add(std::string name, std::vector<int> shape);

  std::vector<ObsSlice> slices_;
  std::size_t total_ = 0;
  Offsets off_{};
  bool coop_ = false;
  int window_h_ = 0;
  int window_w_ = 0;
  int n_floors_ = 0;
  int n_agents_ = 0;
  float max_health_ = 1.0f;
  float max_energy_ = 1.0f;
};

// Egocentric encoding for one agent. `out` must be layout.total() long.
void encode_observation(const WorldState& state, int agent, const ObsLayout& layout, std::span<float> out);

// 8-way compass bearing from `from` to `to` (0=N,1=NE,...,7=NW).
int compass_bearing(Position from, Position to);

// Whether a cell is hidden by darkness from an observer at `observer`.
bool is_dark_cell(const WorldState& state, int floor, Position cell, Position observer);

}  // namespace coopcraft
