#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "coopcraft/achievements.hpp"
#include "coopcraft/rng.hpp"
#include "coopcraft/types.hpp"

namespace coopcraft {

inline constexpr int kItemCap = 99;
inline constexpr int kMaxToolTier = 4;  // wood, stone, iron, diamond
inline constexpr int kMaxAttribute = 5;

struct Inventory {
  std::array<std::uint16_t, kNumItems> items{};
  std::uint8_t pickaxe_tier = 0;
  std::uint8_t sword_tier = 0;
  std::uint8_t bow = 0;
  std::uint8_t iron_armour = 0;
  std::uint8_t diamond_armour = 0;
  std::uint8_t sword_enchanted = 0;
  std::uint8_t armour_enchanted = 0;
  std::uint8_t bow_enchanted = 0;
  // Attributes are tracked but have no combat effect.
  std::uint8_t strength = 1;
  std::uint8_t dexterity = 1;
  std::uint8_t intelligence = 1;
  std::uint8_t xp = 0;

  int count(Item i) const { return items[static_cast<int>(i)]; }
  std::uint16_t& operator[](Item i) { return items[static_cast<int>(i)]; }

  friend bool operator==(const Inventory&, const Inventory&) = default;
};

struct AgentState {
  std::int16_t id = 0;
  Specialization specialization = Specialization::None;
  std::uint8_t floor = 0;
  Position pos;
  Direction facing = Direction::Down;
  std::int16_t health = 0;
  std::int16_t food = 0;
  std::int16_t water = 0;
  std::int16_t energy = 0;
  bool alive = true;
  bool sleeping = false;
  std::int16_t damage_base = 1;
  std::int16_t meter_cap = 9;
  Inventory inventory;
  // Interval counters for the survival clock.
  std::int16_t hunger_counter = 0;
  std::int16_t thirst_counter = 0;
  std::int16_t fatigue_counter = 0;
  std::int16_t starve_counter = 0;
  std::int16_t regen_counter = 0;
  std::uint16_t floors_visited = 1;  // bit per floor index

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

struct MobState {
  MobKind kind = MobKind::Cow;
  std::uint8_t floor = 0;
  Position pos;
  std::int16_t health = 0;
  std::int16_t cooldown = 0;

  bool alive() const { return health > 0; }
  friend bool operator==(const MobState&, const MobState&) = default;
};

struct TradeRequest {
  std::int16_t requester = 0;
  TradableResource resource = TradableResource::Wood;
  std::int16_t ttl = 0;

  friend bool operator==(const TradeRequest&, const TradeRequest&) = default;
};

struct PlantState {
  std::uint8_t floor = 0;
  Position pos;
  std::int16_t age = 0;

  friend bool operator==(const PlantState&, const PlantState&) = default;
};

struct FloorMap {
  int width = 0;
  int height = 0;
  int floor_index = 0;
  std::vector<TileKind> tiles;
  // Torch light, quantised to 0..255.
  std::vector<std::uint8_t> torch_light;
  std::optional<Position> ladder_down;
  std::optional<Position> ladder_up;

  FloorMap() = default;
  FloorMap(int w, int h, int index, TileKind fill)
      : width(w), height(h), floor_index(index),
        tiles(static_cast<std::size_t>(w) * h, fill),
        torch_light(static_cast<std::size_t>(w) * h, 0) {}

  bool in_bounds(Position p) const { return p.x >= 0 && p.y >= 0 && p.x < width && p.y < height; }
  std::size_t index(Position p) const { return static_cast<std::size_t>(p.y) * width + p.x; }
  TileKind at(Position p) const { return in_bounds(p) ? tiles[index(p)] : TileKind::OutOfBounds; }
  void set(Position p, TileKind t) { tiles[index(p)] = t; }

  // Light in [0,1]. Floor 0 is lit by daylight as well as torches.
  float light_at(Position p, float daylight) const {
    if (!in_bounds(p)) return 0.0f;
    const float torch = static_cast<float>(torch_light[index(p)]) / 255.0f;
    if (floor_index == 0) return daylight > torch ? daylight : torch;
    return torch;
  }

  friend bool operator==(const FloorMap&, const FloorMap&) = default;
};

// Per-agent first-completion flags, one bit per achievement.
class AchievementLedger {
 public:
  AchievementLedger() = default;
  explicit AchievementLedger(int n_agents) : done_(static_cast<std::size_t>(n_agents), 0) {}

  bool done(int agent, AchievementId a) const {
    return (done_[static_cast<std::size_t>(agent)] >> static_cast<unsigned>(a)) & 1u;
  }
  // Returns true if this is the first completion.
  bool mark(int agent, AchievementId a) {
    auto& row = done_[static_cast<std::size_t>(agent)];
    const std::uint64_t bit = std::uint64_t{1} << static_cast<unsigned>(a);
    if (row & bit) return false;
    row |= bit;
    return true;
  }
  std::uint64_t row(int agent) const { return done_[static_cast<std::size_t>(agent)]; }
  int n_agents() const { return static_cast<int>(done_.size()); }
  void reset() { std::fill(done_.begin(), done_.end(), 0); }

  friend bool operator==(const AchievementLedger&, const AchievementLedger&) = default;

 private:
  std::vector<std::uint64_t> done_;
};

struct WorldState {
  int width = 0;
  int height = 0;
  std::vector<FloorMap> floors;
  std::vector<MobState> mobs;
  std::vector<AgentState> agents;
  std::vector<TradeRequest> requests;  // sorted by requester, at most one each
  std::vector<PlantState> plants;
  AchievementLedger ledger;
  std::int64_t time = 0;
  float daylight = 1.0f;
  std::uint64_t seed = 0;

  int n_agents() const { return static_cast<int>(agents.size()); }
  RngState root_rng() const { return RngState(seed); }

  friend bool operator==(const WorldState&, const WorldState&) = default;
};

// Occupancy helpers shared by world and agent logic.
int agent_at(const WorldState& s, int floor, Position p);  // any agent, alive or dead; -1 if none
int mob_at(const WorldState& s, int floor, Position p);    // living mob index; -1 if none

}  // namespace coopcraft
