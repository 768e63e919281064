#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "coopcraft/actions.hpp"
#include "coopcraft/config.hpp"
#include "coopcraft/events.hpp"
#include "coopcraft/observation.hpp"
#include "coopcraft/scoring.hpp"
#include "coopcraft/state.hpp"

namespace coopcraft {

struct StepInfo {
  std::vector<Completion> completions;
  EventList events;
  std::vector<float> achievement_rewards;
  std::vector<float> shaping_rewards;
  std::vector<std::uint8_t> alive;
  std::vector<std::int16_t> floor;
  // Batched auto-reset only: the last observation of the finished episode.
  std::vector<float> final_observation;

  friend bool operator==(const StepInfo&, const StepInfo&) = default;
};

struct StepResult {
  std::vector<float> observations;  // n_agents x obs_size, row-major
  std::vector<float> rewards;
  bool done = false;
  bool truncated = false;
  StepInfo info;

  friend bool operator==(const StepResult&, const StepResult&) = default;
};

// Scratch reused across steps so the hot path does not allocate.
struct StepScratch {
  std::vector<MeterDelta> deltas;
  std::vector<std::int16_t> health_before;
  RewardBreakdown rewards;
};

// Full pipeline for one environment timestep, writing observations into `obs`
// (n_agents x layout.total()). `result.observations` is left untouched.
void step_into(WorldState& state, const EnvConfig& config, const ObsLayout& layout,
               std::span<const ActionId> actions, StepScratch& scratch, StepResult& result, std::span<float> obs);

void reset_into(WorldState& state, std::uint64_t seed, const EnvConfig& config, const ObsLayout& layout,
                std::span<float> obs);

void encode_all(const WorldState& state, const ObsLayout& layout, std::span<float> obs);

class Env {
 public:
  explicit Env(EnvConfig config);

  std::vector<float> reset(std::uint64_t seed);
  StepResult step(std::span<const ActionId> actions);

  const EnvConfig& config() const { return config_; }
  const ObsLayout& layout() const { return layout_; }
  const WorldState& state() const { return state_; }
  WorldState& mutable_state() { return state_; }
  std::size_t obs_size() const { return layout_.total(); }
  int n_agents() const { return config_.n_agents; }
  int num_actions() const { return config_.num_actions(); }

 private:
  EnvConfig config_;
  ObsLayout layout_;
  WorldState state_;
  StepScratch scratch_;
};

}  // namespace coopcraft
