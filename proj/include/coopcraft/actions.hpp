#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coopcraft/types.hpp"

namespace coopcraft {

using ActionId = std::uint16_t;

// Base action table shared by both variants. Indices are part of the wire
// and replay formats; never reorder.
enum class Action : ActionId {
  Noop = 0,
  Left,
  Right,
  Up,
  Down,
  Do,
  Sleep,
  PlaceStone,
  PlaceTable,
  PlaceFurnace,
  PlacePlant,
  MakeWoodPickaxe,
  MakeStonePickaxe,
  MakeIronPickaxe,
  MakeWoodSword,
  MakeStoneSword,
  MakeIronSword,
  Rest,
  Descend,
  Ascend,
  MakeDiamondPickaxe,
  MakeDiamondSword,
  MakeIronArmour,
  MakeDiamondArmour,
  ShootArrow,
  MakeArrow,
  CastFireball,
  CastIceball,
  PlaceTorch,
  DrinkPotionRed,
  DrinkPotionGreen,
  DrinkPotionBlue,
  DrinkPotionPink,
  DrinkPotionCyan,
  DrinkPotionYellow,
  ReadBook,
  EnchantSword,
  EnchantArmour,
  MakeTorch,
  LevelUpDexterity,
  LevelUpStrength,
  LevelUpIntelligence,
  EnchantBow,
  FaceLeft,
  FaceRight,
  FaceUp,
  FaceDown,
  MakeBow,
  PickupTorch,
  GatherSapling,
  Reserved50,
  Reserved51,
  Reserved52,
};

inline constexpr ActionId kNumBaseActions = 53;
inline constexpr ActionId kFirstRequestAction = kNumBaseActions;
inline constexpr ActionId kFirstGiveAction = kFirstRequestAction + kNumTradableResources;

// Actions with no effect in this engine (potions, spells, books, reserved
// slots). They are kept so the index space is stable.
constexpr bool is_inert(Action a) {
  switch (a) {
    case Action::CastFireball:
    case Action::CastIceball:
    case Action::DrinkPotionRed:
    case Action::DrinkPotionGreen:
    case Action::DrinkPotionBlue:
    case Action::DrinkPotionPink:
    case Action::DrinkPotionCyan:
    case Action::DrinkPotionYellow:
    case Action::ReadBook:
    case Action::Reserved50:
    case Action::Reserved51:
    case Action::Reserved52:
      return true;
    default:
      return false;
  }
}

constexpr std::optional<Direction> movement_of(ActionId a) {
  switch (static_cast<Action>(a)) {
    case Action::Left: return Direction::Left;
    case Action::Right: return Direction::Right;
    case Action::Up: return Direction::Up;
    case Action::Down: return Direction::Down;
    default: return std::nullopt;
  }
}

constexpr std::optional<TradableResource> request_of(ActionId a) {
  if (a >= kFirstRequestAction && a < kFirstGiveAction) {
    return static_cast<TradableResource>(a - kFirstRequestAction);
  }
  return std::nullopt;
}

// GIVE target for `a`, if `a` is a give action in a table with n_agents seats.
constexpr std::optional<int> give_target_of(ActionId a, int n_agents) {
  if (a >= kFirstGiveAction && a < kFirstGiveAction + n_agents) return a - kFirstGiveAction;
  return std::nullopt;
}

constexpr ActionId request_action(TradableResource r) {
  return static_cast<ActionId>(kFirstRequestAction + static_cast<int>(r));
}

constexpr ActionId give_action(int receiver) { return static_cast<ActionId>(kFirstGiveAction + receiver); }

constexpr ActionId id_of(Action a) { return static_cast<ActionId>(a); }

struct ActionEntry {
  ActionId index;
  std::string name;
};

// Ordered manifest: 53 base actions; the cooperative variant appends one
// REQUEST per tradable resource, then one GIVE per agent.
std::vector<ActionEntry> action_table(bool coop, int n_agents);

std::string_view base_action_name(Action a);

}  // namespace coopcraft
