#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coopcraft/config.hpp"
#include "coopcraft/env.hpp"

namespace coopcraft {

struct RolloutOptions {
  EnvConfig config;
  std::string policy = "random";
  std::uint64_t seed = 0;
  std::uint64_t policy_seed = 0;
  int max_steps = 0;  // 0: run until the episode ends
  std::ostream* record = nullptr;
};

struct RolloutSummary {
  std::int64_t steps = 0;
  bool done = false;
  bool truncated = false;
  std::vector<double> returns;  // per agent, everything including shaping
  // Achievement return: team total in Coop, mean per agent in MA.
  double achievement_return = 0.0;
  double max_total = 0.0;
  double percent_of_max = 0.0;
  std::vector<std::vector<std::string>> achievements;  // per agent, in completion order
  std::map<std::string, std::vector<int>> completion_counts;  // achievement -> per-agent count
  int trades = 0;
  int deaths = 0;
  int revives = 0;
  std::uint64_t final_hash = 0;
  std::int64_t first_trade_step = -1;
  std::int64_t stone_sword_step = -1;
};

RolloutSummary run_rollout(const RolloutOptions& options);

// Folds one step into a running summary. finish_summary fills the derived
// fields (returns as % of max, final hash).
void accumulate(RolloutSummary& summary, const EnvConfig& config, const StepResult& result);
void finish_summary(RolloutSummary& summary, const EnvConfig& config, const WorldState& final_state);

nlohmann::json summary_json(const RolloutSummary& summary);

}  // namespace coopcraft
