#include "coopcraft/batch.hpp"

#include <string>

#include "coopcraft/agent.hpp"

namespace coopcraft {

std::uint64_t reseed(std::uint64_t base_seed, std::uint64_t episode_index) {
  if (episode_index == 0) return base_seed;
  RngState rng = RngState(base_seed, static_cast<std::uint64_t>(RngStream::Reseed)).split(episode_index);
  return rng.next_u64();
}

BatchEnv::BatchEnv(EnvConfig config, int n_envs, int n_threads)
    : config_(std::move(config)), n_threads_(n_threads < 1 ? 1 : n_threads) {
  if (n_envs < 1) throw ShapeMismatch("a batch needs at least one environment");
  config_.validate();
  layout_ = ObsLayout(config_);
  const auto n = static_cast<std::size_t>(n_envs);
  states_.resize(n);
  results_.resize(n);
  scratch_.resize(n);
  base_seeds_.assign(n, 0);
  seeds_.assign(n, 0);
  episodes_.assign(n, 0);
  obs_.assign(n * static_cast<std::size_t>(config_.n_agents) * layout_.total(), 0.0f);
}

std::span<const float> BatchEnv::observations(int env) const {
  const std::size_t stride = static_cast<std::size_t>(config_.n_agents) * layout_.total();
  return std::span<const float>(obs_).subspan(static_cast<std::size_t>(env) * stride, stride);
}

void BatchEnv::reset(std::span<const std::uint64_t> seeds) {
  if (seeds.size() != states_.size()) {
    throw ShapeMismatch("expected " + std::to_string(states_.size()) + " seeds, got " + std::to_string(seeds.size()));
  }
  const std::size_t stride = static_cast<std::size_t>(config_.n_agents) * layout_.total();
  const int n = n_envs();
  for (int e = 0; e < n; ++e) {
    base_seeds_[static_cast<std::size_t>(e)] = seeds[static_cast<std::size_t>(e)];
    seeds_[static_cast<std::size_t>(e)] = seeds[static_cast<std::size_t>(e)];
    episodes_[static_cast<std::size_t>(e)] = 0;
    results_[static_cast<std::size_t>(e)] = StepResult{};
  }
#pragma omp parallel for schedule(static) num_threads(n_threads_)
  for (int e = 0; e < n; ++e) {
    reset_into(states_[static_cast<std::size_t>(e)], seeds_[static_cast<std::size_t>(e)], config_, layout_,
               std::span<float>(obs_).subspan(static_cast<std::size_t>(e) * stride, stride));
  }
}

void BatchEnv::step_env(int env, std::span<const ActionId> actions) {
  const auto e = static_cast<std::size_t>(env);
  const std::size_t stride = static_cast<std::size_t>(config_.n_agents) * layout_.total();
  const std::span<float> obs = std::span<float>(obs_).subspan(e * stride, stride);
  StepResult& result = results_[e];
  step_into(states_[e], config_, layout_, actions, scratch_[e], result, obs);
  if (!result.done) return;
  result.info.final_observation.assign(obs.begin(), obs.end());
  ++episodes_[e];
  seeds_[e] = reseed(base_seeds_[e], episodes_[e]);
  reset_into(states_[e], seeds_[e], config_, layout_, obs);
}

void BatchEnv::step(std::span<const ActionId> actions) {
  const auto agents = static_cast<std::size_t>(config_.n_agents);
  if (actions.size() != states_.size() * agents) {
    throw ShapeMismatch("expected " + std::to_string(states_.size() * agents) + " actions, got " +
                        std::to_string(actions.size()));
  }
  // Validated up front: nothing may throw inside the parallel region.
  const int n_actions = config_.num_actions();
  for (ActionId a : actions) {
    if (a >= n_actions) {
      throw InvalidAction("action " + std::to_string(a) + " out of range for " + std::to_string(n_actions) +
                          " actions");
    }
  }
  const int n = n_envs();
#pragma omp parallel for schedule(static) num_threads(n_threads_)
  for (int e = 0; e < n; ++e) {
    step_env(e, actions.subspan(static_cast<std::size_t>(e) * agents, agents));
  }
}

}  // namespace coopcraft
