#include "coopcraft/env.hpp"

#include <algorithm>
#include <string>

#include "coopcraft/agent.hpp"
#include "coopcraft/coop.hpp"
#include "coopcraft/world.hpp"

namespace coopcraft {

void encode_all(const WorldState& state, const ObsLayout& layout, std::span<float> obs) {
  const std::size_t size = layout.total();
  for (int i = 0; i < state.n_agents(); ++i) {
    encode_observation(state, i, layout, obs.subspan(static_cast<std::size_t>(i) * size, size));
  }
}

void reset_into(WorldState& state, std::uint64_t seed, const EnvConfig& config, const ObsLayout& layout,
                std::span<float> obs) {
  state = generate_world(seed, config);
  assign_specializations(state, config);
  encode_all(state, layout, obs);
}

void step_into(WorldState& state, const EnvConfig& config, const ObsLayout& layout, std::span<const ActionId> actions,
               StepScratch& scratch, StepResult& result, std::span<float> obs) {
  const int n = state.n_agents();
  if (static_cast<int>(actions.size()) != n) {
    throw ActionCountMismatch("expected " + std::to_string(n) + " actions, got " + std::to_string(actions.size()));
  }
  for (int i = 0; i < n; ++i) coerce_action(state, config, i, actions[static_cast<std::size_t>(i)]);

  StepInfo& info = result.info;
  info.completions.clear();
  info.events.clear();
  info.final_observation.clear();

  const bool all_dead = std::none_of(state.agents.begin(), state.agents.end(), [](const AgentState& a) { return a.alive; });
  if (all_dead) {
    result.rewards.assign(static_cast<std::size_t>(n), 0.0f);
    info.achievement_rewards.assign(static_cast<std::size_t>(n), 0.0f);
    info.shaping_rewards.assign(static_cast<std::size_t>(n), 0.0f);
    result.done = true;
    result.truncated = false;
  } else {
    scratch.deltas.assign(static_cast<std::size_t>(n), MeterDelta{});
    for (int i = 0; i < n; ++i) {
      const AgentState& a = state.agents[static_cast<std::size_t>(i)];
      scratch.deltas[static_cast<std::size_t>(i)] = {-a.food, -a.water, 0};
    }

    const RngState root = state.root_rng();
    const std::int64_t t = state.time;
    resolve_actions(state, config, actions, stream_for(root, t, RngStream::Actions), info.events);
    step_world(state, config, stream_for(root, t, RngStream::World), info.events);
    survival_tick(state, config, info.events);
    tick_requests(state);

    for (int i = 0; i < n; ++i) {
      const AgentState& a = state.agents[static_cast<std::size_t>(i)];
      auto& d = scratch.deltas[static_cast<std::size_t>(i)];
      d.food += a.food;
      d.water += a.water;
    }
    for (const Event& e : info.events) {
      if (e.kind == EventKind::AgentDamaged) scratch.deltas[static_cast<std::size_t>(e.agent)].damage_taken += e.amount;
    }

    record_achievements(state.ledger, state.agents, info.events, config.worldgen.n_floors, info.completions);
    compute_rewards(info.completions, scratch.deltas, config.reward, scratch.rewards);
    result.rewards = scratch.rewards.total;
    info.achievement_rewards = scratch.rewards.achievement;
    info.shaping_rewards = scratch.rewards.shaping;

    const Termination term = check_termination(state, config);
    result.done = term.done;
    result.truncated = term.truncated;
  }

  info.alive.resize(static_cast<std::size_t>(n));
  info.floor.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const AgentState& a = state.agents[static_cast<std::size_t>(i)];
    info.alive[static_cast<std::size_t>(i)] = a.alive ? 1 : 0;
    info.floor[static_cast<std::size_t>(i)] = a.floor;
  }
  encode_all(state, layout, obs);
}

Env::Env(EnvConfig config) : config_(std::move(config)) {
  config_.validate();
  layout_ = ObsLayout(config_);
}

std::vector<float> Env::reset(std::uint64_t seed) {
  std::vector<float> obs(layout_.total() * static_cast<std::size_t>(config_.n_agents));
  reset_into(state_, seed, config_, layout_, obs);
  return obs;
}

StepResult Env::step(std::span<const ActionId> actions) {
  StepResult result;
  result.observations.resize(layout_.total() * static_cast<std::size_t>(config_.n_agents));
  step_into(state_, config_, layout_, actions, scratch_, result, result.observations);
  return result;
}

}  // namespace coopcraft
