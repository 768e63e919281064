#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "coopcraft/achievements.hpp"
#include "coopcraft/types.hpp"

namespace coopcraft {

class InvalidConfig : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Variant : std::uint8_t { MA, Coop };
enum class RewardMode : std::uint8_t { Shared, Individual };

inline constexpr int kNumOres = 5;  // coal, iron, diamond, sapphire, ruby

struct WorldGenConfig {
  int floor_width = 48;
  int floor_height = 48;
  int n_floors = 9;
  // Fraction of cavern-wall / mountain stone cells turned into each ore.
  std::array<float, kNumOres> ore_density{0.08f, 0.04f, 0.012f, 0.008f, 0.008f};
  float tree_density = 0.35f;
  std::array<int, kNumMobKinds> base_mob_cap{2, 4, 3, 2};
  int day_length = 300;
  int spawn_radius = 4;
  int zombie_damage = 2;
  int skeleton_damage = 2;
  int shooter_damage = 3;
  int mob_cooldown = 4;
  int skeleton_range = 4;
  int shooter_range = 6;
  int chase_radius = 8;
  int torch_radius = 4;
  int plant_ripen_steps = 50;

  void validate() const;

  friend bool operator==(const WorldGenConfig&, const WorldGenConfig&) = default;
};

struct SurvivalConfig {
  int max_health = 10;
  int max_energy = 10;
  int meter_cap = 9;
  int forager_meter_cap = 12;
  int hunger_interval = 25;
  int thirst_interval = 20;
  int fatigue_interval = 30;
  int sleep_recovery_interval = 3;
  int regen_interval = 10;
  int damage_interval = 10;

  void validate() const;

  friend bool operator==(const SurvivalConfig&, const SurvivalConfig&) = default;
};

struct CombatConfig {
  int damage_base = 1;
  int warrior_factor = 2;
  // Indexed by sword tier: none, wood, stone, iron, diamond.
  std::array<int, 5> sword_multiplier{1, 1, 2, 3, 5};
  int arrow_range = 6;
  std::array<int, kNumMobKinds> mob_health{3, 5, 4, 6};

  void validate() const;

  friend bool operator==(const CombatConfig&, const CombatConfig&) = default;
};

struct RewardConfig {
  RewardMode mode = RewardMode::Shared;
  std::array<float, kNumAchievements> weights = default_weights();
  bool food_water_shaping = false;
  float shaping_unit = 0.1f;
  bool health_penalty_enabled = false;
  float health_penalty = 0.1f;

  static std::array<float, kNumAchievements> default_weights();

  friend bool operator==(const RewardConfig&, const RewardConfig&) = default;
};

struct EnvConfig {
  Variant variant = Variant::Coop;
  int n_agents = 3;
  RewardConfig reward;
  WorldGenConfig worldgen;
  SurvivalConfig survival;
  CombatConfig combat;
  int max_episode_steps = 10000;
  int obs_height = 9;
  int obs_width = 11;

  static EnvConfig coop();
  static EnvConfig ma(int n_agents);

  bool coop_mode() const { return variant == Variant::Coop; }
  // Revival is a cooperative-variant mechanic.
  bool revive_enabled() const { return variant == Variant::Coop; }
  int num_actions() const;

  void validate() const;

  friend bool operator==(const EnvConfig&, const EnvConfig&) = default;
};

std::string_view name_of(Variant v);
std::string_view name_of(RewardMode m);

}  // namespace coopcraft
