#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "coopcraft/env.hpp"

namespace coopcraft {

class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Seed for the episode that follows `episode_index` finished episodes.
std::uint64_t reseed(std::uint64_t base_seed, std::uint64_t episode_index);

// N independent environments sharing one config, stepped together.
// Finished environments auto-reset: the step that ends an episode reports
// done with the terminal observation in info.final_observation, and the
// observation buffer already holds the first observation of the next episode.
class BatchEnv {
 public:
  BatchEnv(EnvConfig config, int n_envs, int n_threads = 1);

  void reset(std::span<const std::uint64_t> seeds);
  // actions is n_envs x n_agents, row-major.
  void step(std::span<const ActionId> actions);

  int n_envs() const { return static_cast<int>(states_.size()); }
  int n_agents() const { return config_.n_agents; }
  std::size_t obs_size() const { return layout_.total(); }
  const EnvConfig& config() const { return config_; }
  const ObsLayout& layout() const { return layout_; }

  // n_envs x n_agents x obs_size
  std::span<const float> observations() const { return obs_; }
  std::span<const float> observations(int env) const;
  const StepResult& result(int env) const { return results_[static_cast<std::size_t>(env)]; }
  const WorldState& state(int env) const { return states_[static_cast<std::size_t>(env)]; }
  std::uint64_t episode_seed(int env) const { return seeds_[static_cast<std::size_t>(env)]; }

  void set_threads(int n) { n_threads_ = n < 1 ? 1 : n; }

 private:
  void step_env(int env, std::span<const ActionId> actions);

  EnvConfig config_;
  ObsLayout layout_;
  int n_threads_;
  std::vector<WorldState> states_;
  std::vector<StepResult> results_;
  std::vector<StepScratch> scratch_;
  std::vector<std::uint64_t> base_seeds_;
  std::vector<std::uint64_t> seeds_;
  std::vector<std::uint64_t> episodes_;
  std::vector<float> obs_;
};

}  // namespace coopcraft
