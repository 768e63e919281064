#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <string_view>

namespace coopcraft {

enum class TileKind : std::uint8_t {
  OutOfBounds,
  Grass,
  Water,
  Sand,
  Stone,
  Path,
  Tree,
  CoalOre,
  IronOre,
  DiamondOre,
  SapphireOre,
  RubyOre,
  CraftingTable,
  Furnace,
  Torch,
  PlacedStone,
  Sapling,
  RipePlant,
  LadderDown,
  LadderUp,
  Fountain,
  Lava,
  DarkFloor,
};
inline constexpr int kNumTileKinds = 23;

enum class MobKind : std::uint8_t { Cow, Zombie, Skeleton, RangedShooter };
inline constexpr int kNumMobKinds = 4;

enum class Specialization : std::uint8_t { Miner, Forager, Warrior, None };
inline constexpr int kNumSpecializations = 3;  // excluding None

enum class Direction : std::uint8_t { Left, Right, Up, Down };
inline constexpr int kNumDirections = 4;

// Countable inventory items. Tools and attributes live in dedicated fields.
enum class Item : std::uint8_t { Wood, Stone, Coal, Iron, Diamond, Sapphire, Ruby, Sapling, Torch, Arrow };
inline constexpr int kNumItems = 10;

enum class TradableResource : std::uint8_t { Wood, Stone, Coal, Iron, Diamond, Sapphire, Ruby, Food, Water };
inline constexpr int kNumTradableResources = 9;

struct Position {
  std::int16_t x = 0;
  std::int16_t y = 0;

  friend constexpr bool operator==(Position, Position) = default;
};

constexpr Position offset(Position p, Direction d) {
  switch (d) {
    case Direction::Left: return {static_cast<std::int16_t>(p.x - 1), p.y};
    case Direction::Right: return {static_cast<std::int16_t>(p.x + 1), p.y};
    case Direction::Up: return {p.x, static_cast<std::int16_t>(p.y - 1)};
    case Direction::Down: return {p.x, static_cast<std::int16_t>(p.y + 1)};
  }
  return p;
}

constexpr int manhattan(Position a, Position b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

constexpr int chebyshev(Position a, Position b) {
  const int dx = std::abs(a.x - b.x);
  const int dy = std::abs(a.y - b.y);
  return dx > dy ? dx : dy;
}

inline constexpr std::array<std::string_view, kNumTileKinds> kTileNames = {
    "out_of_bounds", "grass",       "water",      "sand",      "stone",       "path",
    "tree",          "coal_ore",    "iron_ore",   "diamond_ore", "sapphire_ore", "ruby_ore",
    "crafting_table", "furnace",    "torch",      "placed_stone", "sapling",   "ripe_plant",
    "ladder_down",   "ladder_up",   "fountain",   "lava",      "dark_floor"};

inline constexpr std::array<std::string_view, kNumMobKinds> kMobNames = {"cow", "zombie", "skeleton",
                                                                        "ranged_shooter"};

inline constexpr std::array<std::string_view, 4> kSpecializationNames = {"miner", "forager", "warrior", "none"};

inline constexpr std::array<std::string_view, kNumDirections> kDirectionNames = {"left", "right", "up", "down"};

inline constexpr std::array<std::string_view, kNumItems> kItemNames = {
    "wood", "stone", "coal", "iron", "diamond", "sapphire", "ruby", "sapling", "torch", "arrow"};

inline constexpr std::array<std::string_view, kNumTradableResources> kResourceNames = {
    "wood", "stone", "coal", "iron", "diamond", "sapphire", "ruby", "food", "water"};

constexpr std::string_view name_of(TileKind t) { return kTileNames[static_cast<int>(t)]; }
constexpr std::string_view name_of(MobKind m) { return kMobNames[static_cast<int>(m)]; }
constexpr std::string_view name_of(Specialization s) { return kSpecializationNames[static_cast<int>(s)]; }
constexpr std::string_view name_of(Direction d) { return kDirectionNames[static_cast<int>(d)]; }
constexpr std::string_view name_of(Item i) { return kItemNames[static_cast<int>(i)]; }
constexpr std::string_view name_of(TradableResource r) { return kResourceNames[static_cast<int>(r)]; }

constexpr bool is_hostile(MobKind k) { return k != MobKind::Cow; }

constexpr bool is_material(TradableResource r) {
  return r != TradableResource::Food && r != TradableResource::Water;
}

// Materials share their index with the matching inventory Item.
constexpr Item item_of(TradableResource r) { return static_cast<Item>(static_cast<int>(r)); }

}  // namespace coopcraft
