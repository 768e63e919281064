#pragma once

#include <span>
#include <vector>

#include "coopcraft/achievements.hpp"
#include "coopcraft/config.hpp"
#include "coopcraft/events.hpp"
#include "coopcraft/state.hpp"

namespace coopcraft {

struct Completion {
  std::int16_t agent = 0;
  AchievementId achievement = AchievementId::CollectWood;

  friend bool operator==(const Completion&, const Completion&) = default;
};

// Appends every (agent, achievement) pair that `event` credits, before
// eligibility filtering. Exposed for log auditing.
void achievements_for(const Event& event, int n_floors, std::vector<Completion>& out);

// Marks first-time completions in the ledger; ineligible specializations are
// filtered out. Only new completions are appended to `newly`.
void record_achievements(AchievementLedger& ledger, std::span<const AgentState> agents,
                         std::span<const Event> events, int n_floors, std::vector<Completion>& newly);

struct MeterDelta {
  int food = 0;
  int water = 0;
  int damage_taken = 0;
};

struct RewardBreakdown {
  std::vector<float> total;
  std::vector<float> achievement;
  std::vector<float> shaping;  // food/water shaping plus the optional damage penalty
};

void compute_rewards(std::span<const Completion> newly, std::span<const MeterDelta> deltas,
                     const RewardConfig& config, RewardBreakdown& out);

// Highest achievable achievement return: per agent for MA, summed over the
// three specialized agents for Coop. Descents below the last floor are excluded.
double max_total(const RewardConfig& config, Variant variant, int n_floors = 9);
double max_total(const EnvConfig& config);

}  // namespace coopcraft
