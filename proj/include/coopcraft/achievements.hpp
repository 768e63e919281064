#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "coopcraft/types.hpp"

namespace coopcraft {

enum class AchievementId : std::uint8_t {
  // open to every specialization
  CollectWood,
  PlaceTable,
  CollectSapling,
  MakeWoodSword,
  DefeatZombie,
  WakeUp,
  PlaceFurnace,
  CollectTorch,
  DefeatSkeleton,
  MakeIronArmour,
  LevelUpStrength,
  LevelUpDexterity,
  LevelUpIntelligence,
  ReturnToSurface,
  SurviveNight,
  DefeatRangedShooter,
  MakeDiamondArmour,
  EnchantSword,
  EnchantArmour,
  EnterDungeon,
  EnterGnomishMines,
  EnterSewers,
  EnterVaults,
  EnterTrollMines,
  EnterFireRealm,
  EnterIceRealm,
  EnterGraveyard,
  // miner
  MakeWoodPickaxe,
  CollectStone,
  PlaceStone,
  CollectCoal,
  MakeStonePickaxe,
  MakeTorch,
  PlaceTorch,
  CollectIron,
  MakeIronPickaxe,
  CollectDiamond,
  LightTheDeep,
  CollectSapphire,
  CollectRuby,
  MakeDiamondPickaxe,
  // forager
  EatCow,
  CollectDrink,
  PlacePlant,
  CollectFood,
  EatPlant,
  DrinkFromFountain,
  StockFood,
  StockWater,
  // warrior
  MakeStoneSword,
  MakeBow,
  MakeArrow,
  FireBow,
  MakeIronSword,
  DefeatAtRange,
  MakeDiamondSword,
  EnchantBow,
  // cooperative variant only
  RequestResource,
  ReceiveTrade,
  CompleteTrade,
  ShareSustenance,
  ShareMaterial,
  ReviveTeammate,
};
inline constexpr int kNumAchievements = 63;

namespace eligibility {
inline constexpr std::uint8_t kMiner = 1;
inline constexpr std::uint8_t kForager = 2;
inline constexpr std::uint8_t kWarrior = 4;
inline constexpr std::uint8_t kAll = kMiner | kForager | kWarrior;
}  // namespace eligibility

struct AchievementInfo {
  std::string_view name;
  float weight;
  std::uint8_t eligible;  // eligibility bits for the specialized roles
  bool coop_only;
};

inline constexpr std::array<AchievementInfo, kNumAchievements> kAchievements = {{
    {"COLLECT_WOOD", 1, eligibility::kAll, false},
    {"PLACE_TABLE", 1, eligibility::kAll, false},
    {"COLLECT_SAPLING", 1, eligibility::kAll, false},
    {"MAKE_WOOD_SWORD", 1, eligibility::kAll, false},
    {"DEFEAT_ZOMBIE", 1, eligibility::kAll, false},
    {"WAKE_UP", 1, eligibility::kAll, false},
    {"PLACE_FURNACE", 1, eligibility::kAll, false},
    {"COLLECT_TORCH", 1, eligibility::kAll, false},
    {"DEFEAT_SKELETON", 3, eligibility::kAll, false},
    {"MAKE_IRON_ARMOUR", 3, eligibility::kAll, false},
    {"LEVEL_UP_STRENGTH", 3, eligibility::kAll, false},
    {"LEVEL_UP_DEXTERITY", 3, eligibility::kAll, false},
    {"LEVEL_UP_INTELLIGENCE", 3, eligibility::kAll, false},
    {"RETURN_TO_SURFACE", 3, eligibility::kAll, false},
    {"SURVIVE_NIGHT", 3, eligibility::kAll, false},
    {"DEFEAT_RANGED_SHOOTER", 5, eligibility::kAll, false},
    {"MAKE_DIAMOND_ARMOUR", 5, eligibility::kAll, false},
    {"ENCHANT_SWORD", 5, eligibility::kAll, false},
    {"ENCHANT_ARMOUR", 5, eligibility::kAll, false},
    {"ENTER_DUNGEON", 8, eligibility::kAll, false},
    {"ENTER_GNOMISH_MINES", 8, eligibility::kAll, false},
    {"ENTER_SEWERS", 8, eligibility::kAll, false},
    {"ENTER_VAULTS", 8, eligibility::kAll, false},
    {"ENTER_TROLL_MINES", 8, eligibility::kAll, false},
    {"ENTER_FIRE_REALM", 8, eligibility::kAll, false},
    {"ENTER_ICE_REALM", 8, eligibility::kAll, false},
    {"ENTER_GRAVEYARD", 8, eligibility::kAll, false},
    {"MAKE_WOOD_PICKAXE", 1, eligibility::kMiner, false},
    {"COLLECT_STONE", 1, eligibility::kMiner, false},
    {"PLACE_STONE", 1, eligibility::kMiner, false},
    {"COLLECT_COAL", 1, eligibility::kMiner, false},
    {"MAKE_STONE_PICKAXE", 3, eligibility::kMiner, false},
    {"MAKE_TORCH", 3, eligibility::kMiner, false},
    {"PLACE_TORCH", 3, eligibility::kMiner, false},
    {"COLLECT_IRON", 3, eligibility::kMiner, false},
    {"MAKE_IRON_PICKAXE", 5, eligibility::kMiner, false},
    {"COLLECT_DIAMOND", 5, eligibility::kMiner, false},
    {"LIGHT_THE_DEEP", 5, eligibility::kMiner, false},
    {"COLLECT_SAPPHIRE", 8, eligibility::kMiner, false},
    {"COLLECT_RUBY", 8, eligibility::kMiner, false},
    {"MAKE_DIAMOND_PICKAXE", 8, eligibility::kMiner, false},
    {"EAT_COW", 1, eligibility::kForager, false},
    {"COLLECT_DRINK", 1, eligibility::kForager, false},
    {"PLACE_PLANT", 1, eligibility::kForager, false},
    {"COLLECT_FOOD", 1, eligibility::kForager, false},
    {"EAT_PLANT", 3, eligibility::kForager, false},
    {"DRINK_FROM_FOUNTAIN", 3, eligibility::kForager, false},
    {"STOCK_FOOD", 5, eligibility::kForager, false},
    {"STOCK_WATER", 5, eligibility::kForager, false},
    {"MAKE_STONE_SWORD", 3, eligibility::kWarrior, false},
    {"MAKE_BOW", 3, eligibility::kWarrior, false},
    {"MAKE_ARROW", 3, eligibility::kWarrior, false},
    {"FIRE_BOW", 3, eligibility::kWarrior, false},
    {"MAKE_IRON_SWORD", 5, eligibility::kWarrior, false},
    {"DEFEAT_AT_RANGE", 5, eligibility::kWarrior, false},
    {"MAKE_DIAMOND_SWORD", 8, eligibility::kWarrior, false},
    {"ENCHANT_BOW", 8, eligibility::kWarrior, false},
    {"REQUEST_RESOURCE", 3, eligibility::kAll, true},
    {"RECEIVE_TRADE", 8, eligibility::kAll, true},
    {"COMPLETE_TRADE", 8, eligibility::kAll, true},
    {"SHARE_SUSTENANCE", 8, eligibility::kAll, true},
    {"SHARE_MATERIAL", 8, eligibility::kAll, true},
    {"REVIVE_TEAMMATE", 8, eligibility::kAll, true},
}};

constexpr const AchievementInfo& info_of(AchievementId a) { return kAchievements[static_cast<int>(a)]; }
constexpr std::string_view name_of(AchievementId a) { return info_of(a).name; }

// Specialization None (homogeneous variant) may complete everything that is
// not cooperative-only.
constexpr bool is_eligible(AchievementId a, Specialization spec) {
  const auto& info = info_of(a);
  if (spec == Specialization::None) return !info.coop_only;
  return (info.eligible & (1u << static_cast<unsigned>(spec))) != 0;
}

// Floor index reached by a descent achievement, if it is one.
constexpr std::optional<int> floor_of(AchievementId a) {
  const int first = static_cast<int>(AchievementId::EnterDungeon);
  const int idx = static_cast<int>(a);
  if (idx >= first && idx <= static_cast<int>(AchievementId::EnterGraveyard)) return idx - first + 1;
  return std::nullopt;
}

constexpr AchievementId enter_floor_achievement(int floor) {
  return static_cast<AchievementId>(static_cast<int>(AchievementId::EnterDungeon) + floor - 1);
}

std::optional<AchievementId> achievement_from_name(std::string_view name);

}  // namespace coopcraft
