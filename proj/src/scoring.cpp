#include "coopcraft/scoring.hpp"

#include <algorithm>

#include "coopcraft/actions.hpp"

namespace coopcraft {

namespace {

std::optional<AchievementId> harvest_achievement(Item item) {
  switch (item) {
    case Item::Wood: return AchievementId::CollectWood;
    case Item::Stone: return AchievementId::CollectStone;
    case Item::Coal: return AchievementId::CollectCoal;
    case Item::Iron: return AchievementId::CollectIron;
    case Item::Diamond: return AchievementId::CollectDiamond;
    case Item::Sapphire: return AchievementId::CollectSapphire;
    case Item::Ruby: return AchievementId::CollectRuby;
    default: return std::nullopt;
  }
}

std::optional<AchievementId> craft_achievement(Action a) {
  switch (a) {
    case Action::MakeWoodPickaxe: return AchievementId::MakeWoodPickaxe;
    case Action::MakeStonePickaxe: return AchievementId::MakeStonePickaxe;
    case Action::MakeIronPickaxe: return AchievementId::MakeIronPickaxe;
    case Action::MakeDiamondPickaxe: return AchievementId::MakeDiamondPickaxe;
    case Action::MakeWoodSword: return AchievementId::MakeWoodSword;
    case Action::MakeStoneSword: return AchievementId::MakeStoneSword;
    case Action::MakeIronSword: return AchievementId::MakeIronSword;
    case Action::MakeDiamondSword: return AchievementId::MakeDiamondSword;
    case Action::MakeIronArmour: return AchievementId::MakeIronArmour;
    case Action::MakeDiamondArmour: return AchievementId::MakeDiamondArmour;
    case Action::MakeBow: return AchievementId::MakeBow;
    case Action::MakeArrow: return AchievementId::MakeArrow;
    case Action::MakeTorch: return AchievementId::MakeTorch;
    default: return std::nullopt;
  }
}

std::optional<AchievementId> place_achievement(TileKind t) {
  switch (t) {
    case TileKind::CraftingTable: return AchievementId::PlaceTable;
    case TileKind::Furnace: return AchievementId::PlaceFurnace;
    case TileKind::PlacedStone: return AchievementId::PlaceStone;
    case TileKind::Sapling: return AchievementId::PlacePlant;
    case TileKind::Torch: return AchievementId::PlaceTorch;
    default: return std::nullopt;
  }
}

std::optional<AchievementId> kill_achievement(MobKind m) {
  switch (m) {
    case MobKind::Zombie: return AchievementId::DefeatZombie;
    case MobKind::Skeleton: return AchievementId::DefeatSkeleton;
    case MobKind::RangedShooter: return AchievementId::DefeatRangedShooter;
    default: return std::nullopt;
  }
}

constexpr int kLightTheDeepFloor = 2;

}  // namespace

void achievements_for(const Event& e, int n_floors, std::vector<Completion>& out) {
  auto add = [&](int agent, AchievementId a) { out.push_back({static_cast<std::int16_t>(agent), a}); };
  auto add_opt = [&](int agent, std::optional<AchievementId> a) {
    if (a) add(agent, *a);
  };
  switch (e.kind) {
    case EventKind::Harvest: add_opt(e.agent, harvest_achievement(static_cast<Item>(e.subject))); break;
    case EventKind::Drink:
      add(e.agent, AchievementId::CollectDrink);
      if (static_cast<TileKind>(e.subject) == TileKind::Fountain) add(e.agent, AchievementId::DrinkFromFountain);
      if (e.flag) add(e.agent, AchievementId::StockWater);
      break;
    case EventKind::Eat:
      add(e.agent, e.subject == 0 ? AchievementId::EatCow : AchievementId::EatPlant);
      add(e.agent, AchievementId::CollectFood);
      if (e.flag) add(e.agent, AchievementId::StockFood);
      break;
    case EventKind::Craft: add_opt(e.agent, craft_achievement(static_cast<Action>(e.subject))); break;
    case EventKind::Place:
      add_opt(e.agent, place_achievement(static_cast<TileKind>(e.subject)));
      if (static_cast<TileKind>(e.subject) == TileKind::Torch && e.amount >= kLightTheDeepFloor) {
        add(e.agent, AchievementId::LightTheDeep);
      }
      break;
    case EventKind::Kill: {
      const auto kind = static_cast<MobKind>(e.subject);
      add_opt(e.agent, kill_achievement(kind));
      if (e.flag && is_hostile(kind)) add(e.agent, AchievementId::DefeatAtRange);
      break;
    }
    case EventKind::EnterFloor:
      if (e.subject >= 1 && e.subject < n_floors && e.subject <= 8) add(e.agent, enter_floor_achievement(e.subject));
      break;
    case EventKind::ReturnToSurface: add(e.agent, AchievementId::ReturnToSurface); break;
    case EventKind::WakeUp: add(e.agent, AchievementId::WakeUp); break;
    case EventKind::Shoot: add(e.agent, AchievementId::FireBow); break;
    case EventKind::LevelUp:
      add(e.agent, e.subject == 0   ? AchievementId::LevelUpStrength
                   : e.subject == 1 ? AchievementId::LevelUpDexterity
                                    : AchievementId::LevelUpIntelligence);
      break;
    case EventKind::Enchant:
      add(e.agent, e.subject == 0   ? AchievementId::EnchantSword
                   : e.subject == 1 ? AchievementId::EnchantArmour
                                    : AchievementId::EnchantBow);
      break;
    case EventKind::PickupTorch: add(e.agent, AchievementId::CollectTorch); break;
    case EventKind::CollectSapling: add(e.agent, AchievementId::CollectSapling); break;
    case EventKind::SurviveNight: add(e.agent, AchievementId::SurviveNight); break;
    case EventKind::Request: add(e.agent, AchievementId::RequestResource); break;
    case EventKind::Trade:
      add(e.agent, AchievementId::CompleteTrade);
      add(e.other, AchievementId::ReceiveTrade);
      add(e.agent, is_material(static_cast<TradableResource>(e.subject)) ? AchievementId::ShareMaterial
                                                                          : AchievementId::ShareSustenance);
      break;
    case EventKind::Revive: add(e.agent, AchievementId::ReviveTeammate); break;
    default: break;
  }
}

void record_achievements(AchievementLedger& ledger, std::span<const AgentState> agents, std::span<const Event> events,
                         int n_floors, std::vector<Completion>& newly) {
  thread_local std::vector<Completion> candidates;
  for (const Event& e : events) {
    candidates.clear();
    achievements_for(e, n_floors, candidates);
    for (const Completion& c : candidates) {
      if (c.agent < 0 || c.agent >= static_cast<int>(agents.size())) continue;
      if (!is_eligible(c.achievement, agents[static_cast<std::size_t>(c.agent)].specialization)) continue;
      if (ledger.mark(c.agent, c.achievement)) newly.push_back(c);
    }
  }
}

void compute_rewards(std::span<const Completion> newly, std::span<const MeterDelta> deltas,
                     const RewardConfig& config, RewardBreakdown& out) {
  const std::size_t n = deltas.size();
  out.total.assign(n, 0.0f);
  out.achievement.assign(n, 0.0f);
  out.shaping.assign(n, 0.0f);
  if (config.mode == RewardMode::Shared) {
    float points = 0.0f;
    for (const Completion& c : newly) points += config.weights[static_cast<std::size_t>(c.achievement)];
    std::fill(out.achievement.begin(), out.achievement.end(), points);
  } else {
    for (const Completion& c : newly) {
      out.achievement[static_cast<std::size_t>(c.agent)] += config.weights[static_cast<std::size_t>(c.achievement)];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    float shaping = 0.0f;
    if (config.food_water_shaping) {
      shaping += config.shaping_unit * static_cast<float>(deltas[i].food + deltas[i].water);
    }
    if (config.health_penalty_enabled) {
      shaping -= config.health_penalty * static_cast<float>(deltas[i].damage_taken);
    }
    out.shaping[i] = shaping;
    out.total[i] = out.achievement[i] + shaping;
  }
}

double max_total(const RewardConfig& config, Variant variant, int n_floors) {
  auto sum_for = [&](Specialization spec) {
    double total = 0.0;
    for (int i = 0; i < kNumAchievements; ++i) {
      const auto a = static_cast<AchievementId>(i);
      if (const auto f = floor_of(a); f && *f >= n_floors) continue;
      if (variant == Variant::MA && info_of(a).coop_only) continue;
      if (is_eligible(a, spec)) total += config.weights[static_cast<std::size_t>(i)];
    }
    return total;
  };
  if (variant == Variant::MA) return sum_for(Specialization::None);
  return sum_for(Specialization::Miner) + sum_for(Specialization::Forager) + sum_for(Specialization::Warrior);
}

double max_total(const EnvConfig& config) {
  return max_total(config.reward, config.variant, config.worldgen.n_floors);
}

}  // namespace coopcraft
