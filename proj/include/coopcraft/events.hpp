#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "coopcraft/types.hpp"

namespace coopcraft {

// Specialization-gated capabilities.
enum class Capability : std::uint8_t {
  CraftPickaxe,
  CraftTorch,
  PlaceTorch,
  PlaceStone,
  HuntPassive,
  DrinkSource,
  PlantSapling,
  HarvestCrop,
  CraftAdvancedSword,
  CollectBow,
  CraftArrow,
};
inline constexpr int kNumCapabilities = 11;
inline constexpr std::uint8_t kNoCapability = 0xFF;

enum class EventKind : std::uint8_t {
  Harvest,         // subject = Item gained
  Drink,           // subject = source tile, amount = water gained, flag = reached cap
  Eat,             // subject = 0 cow / 1 plant, amount = food gained, flag = reached cap
  Craft,           // subject = Action crafted
  Place,           // subject = TileKind placed, amount = floor
  Attack,          // other = target agent (-1 for a mob, subject = MobKind); amount = damage
  Kill,            // subject = MobKind, flag = ranged
  AgentDamaged,    // agent = victim, other = source agent (-1 for world), subject = DamageCause
  Death,           // agent = victim
  Revive,          // agent = reviver, other = revived
  EnterFloor,      // subject = floor, flag = first visit
  ReturnToSurface, // agent arrived back on floor 0
  Sleep,
  WakeUp,
  Shoot,
  LevelUp,         // subject = 0 str / 1 dex / 2 int
  Enchant,         // subject = 0 sword / 1 armour / 2 bow
  PickupTorch,
  CollectSapling,
  SurviveNight,
  Request,         // subject = TradableResource
  Trade,           // agent = giver, other = receiver, subject = TradableResource
};

enum class DamageCause : std::uint8_t { Agent, Mob, Arrow, Starvation, Lava };

struct Event {
  EventKind kind = EventKind::Harvest;
  std::int16_t agent = -1;
  std::int16_t other = -1;
  std::uint8_t subject = 0;
  std::uint8_t capability = kNoCapability;
  std::int16_t amount = 0;
  bool flag = false;

  friend bool operator==(const Event&, const Event&) = default;
};

using EventList = std::vector<Event>;

std::string_view name_of(EventKind k);
std::string_view name_of(Capability c);

}  // namespace coopcraft
