#include "coopcraft/config.hpp"

#include <string>

#include "coopcraft/actions.hpp"

namespace coopcraft {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidConfig(what);
}

}  // namespace

void WorldGenConfig::validate() const {
  require(floor_width >= 16 && floor_height >= 16, "floor dimensions must be at least 16x16");
  require(floor_width <= 1024 && floor_height <= 1024, "floor dimensions must be at most 1024x1024");
  require(n_floors >= 1 && n_floors <= 9, "n_floors must be in [1, 9]");
  for (float d : ore_density) require(d >= 0.0f && d <= 1.0f, "ore densities must be in [0, 1]");
  require(tree_density >= 0.0f && tree_density <= 1.0f, "tree_density must be in [0, 1]");
  for (int c : base_mob_cap) require(c >= 0, "base mob caps must be non-negative");
  require(day_length > 0, "day_length must be positive");
  require(spawn_radius >= 1, "spawn_radius must be at least 1");
  require(mob_cooldown >= 0, "mob_cooldown must be non-negative");
  require(torch_radius >= 0, "torch_radius must be non-negative");
  require(plant_ripen_steps > 0, "plant_ripen_steps must be positive");
}

void SurvivalConfig::validate() const {
  require(max_health > 0 && max_energy > 0, "max health and energy must be positive");
  require(meter_cap > 0 && forager_meter_cap > 0, "meter caps must be positive");
  require(hunger_interval > 0 && thirst_interval > 0 && fatigue_interval > 0 && sleep_recovery_interval > 0 &&
              regen_interval > 0 && damage_interval > 0,
          "survival intervals must be positive");
}

void CombatConfig::validate() const {
  require(damage_base > 0 && warrior_factor > 0, "damage must be positive");
  for (int m : sword_multiplier) require(m > 0, "sword multipliers must be positive");
  for (int h : mob_health) require(h > 0, "mob health must be positive");
  require(arrow_range > 0, "arrow_range must be positive");
}

std::array<float, kNumAchievements> RewardConfig::default_weights() {
  std::array<float, kNumAchievements> w{};
  for (int i = 0; i < kNumAchievements; ++i) w[static_cast<std::size_t>(i)] = kAchievements[static_cast<std::size_t>(i)].weight;
  return w;
}

EnvConfig EnvConfig::coop() {
  EnvConfig c;
  c.variant = Variant::Coop;
  c.n_agents = 3;
  return c;
}

EnvConfig EnvConfig::ma(int n_agents) {
  EnvConfig c;
  c.variant = Variant::MA;
  c.n_agents = n_agents;
  return c;
}

int EnvConfig::num_actions() const {
  return coop_mode() ? kNumBaseActions + kNumTradableResources + n_agents : kNumBaseActions;
}

void EnvConfig::validate() const {
  require(n_agents >= 1, "n_agents must be at least 1");
  require(n_agents <= 256, "n_agents must be at most 256");
  require(variant != Variant::Coop || n_agents == 3, "the cooperative variant requires exactly 3 agents");
  require(max_episode_steps > 0, "max_episode_steps must be positive");
  require(obs_height >= 1 && obs_width >= 1 && obs_height % 2 == 1 && obs_width % 2 == 1,
          "observation window dimensions must be odd and positive");
  require(reward.shaping_unit >= 0.0f && reward.health_penalty >= 0.0f, "reward terms must be non-negative");
  worldgen.validate();
  survival.validate();
  combat.validate();
}

std::string_view name_of(Variant v) { return v == Variant::MA ? "ma" : "coop"; }
std::string_view name_of(RewardMode m) { return m == RewardMode::Shared ? "shared" : "individual"; }

}  // namespace coopcraft
