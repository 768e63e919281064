#pragma once

#include <initializer_list>
#include <vector>

#include "coopcraft/agent.hpp"
#include "coopcraft/env.hpp"
#include "coopcraft/world.hpp"

namespace coopcraft::testing {

// Default config with every mob cap at zero, so hand-built scenes stay put.
inline EnvConfig quiet(EnvConfig config = EnvConfig{}) {
  config.worldgen.base_mob_cap = {0, 0, 0, 0};
  return config;
}

inline EnvConfig quiet_ma(int n_agents) { return quiet(EnvConfig::ma(n_agents)); }

// Floor 0 turned into open grass, no mobs, agents lined up on row 10 at
// x = 10, 13, 16, ... facing right.
inline void flatten(WorldState& s) {
  FloorMap& map = s.floors[0];
  std::fill(map.tiles.begin(), map.tiles.end(), TileKind::Grass);
  std::fill(map.torch_light.begin(), map.torch_light.end(), 0);
  s.mobs.clear();
  s.requests.clear();
  s.plants.clear();
  for (auto& a : s.agents) {
    a.floor = 0;
    a.pos = {static_cast<std::int16_t>(10 + 3 * a.id), 10};
    a.facing = Direction::Right;
  }
}

// Env reset with seed 1, then flattened.
inline Env flat_env(const EnvConfig& config) {
  Env env(config);
  env.reset(1);
  flatten(env.mutable_state());
  return env;
}

inline StepResult step(Env& env, std::initializer_list<ActionId> actions) {
  const std::vector<ActionId> v(actions);
  return env.step(v);
}

inline StepResult step(Env& env, const std::vector<ActionId>& actions) { return env.step(actions); }

inline StepResult step(Env& env, std::initializer_list<Action> actions) {
  std::vector<ActionId> v;
  for (Action a : actions) v.push_back(id_of(a));
  return env.step(v);
}

inline std::vector<ActionId> noops(int n) { return std::vector<ActionId>(static_cast<std::size_t>(n), 0); }

inline int count_events(const EventList& events, EventKind kind) {
  int n = 0;
  for (const auto& e : events) n += e.kind == kind;
  return n;
}

inline Position at(int x, int y) { return {static_cast<std::int16_t>(x), static_cast<std::int16_t>(y)}; }

}  // namespace coopcraft::testing
