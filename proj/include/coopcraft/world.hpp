#pragma once

#include <cstdint>

#include "coopcraft/config.hpp"
#include "coopcraft/events.hpp"
#include "coopcraft/rng.hpp"
#include "coopcraft/state.hpp"

namespace coopcraft {

constexpr bool is_walkable(TileKind t) {
  switch (t) {
    case TileKind::Grass:
    case TileKind::Sand:
    case TileKind::Path:
    case TileKind::DarkFloor:
    case TileKind::LadderDown:
    case TileKind::LadderUp:
    case TileKind::Torch:
    case TileKind::Lava:
      return true;
    default:
      return false;
  }
}

// Mobs avoid lava, ladders and placed torches.
constexpr bool is_mob_walkable(TileKind t) {
  return t == TileKind::Grass || t == TileKind::Sand || t == TileKind::Path || t == TileKind::DarkFloor;
}

// Bare floor a block, plant or torch may be placed onto.
constexpr bool is_open_floor(TileKind t) {
  return t == TileKind::Grass || t == TileKind::Sand || t == TileKind::Path || t == TileKind::DarkFloor;
}

// Whether `kind` populates floor `floor`.
constexpr bool spawns_on(MobKind kind, int floor) {
  switch (kind) {
    case MobKind::Cow:
    case MobKind::Zombie:
      return floor == 0;
    case MobKind::Skeleton:
      return floor >= 1;
    case MobKind::RangedShooter:
      return floor >= 3;
  }
  return false;
}

// Per-floor cap, linear in the number of agents.
int mob_cap(MobKind kind, int n_agents, const WorldGenConfig& config);

// Cosine day/night curve; 1 at time 0, 0 at half a day.
float daylight_at(std::int64_t time, int day_length);

// Generates all floors, spawns config.n_agents agents (specialization None)
// on floor 0 and populates mobs. Throws InvalidConfig when the spawn region
// cannot host every agent.
WorldState generate_world(std::uint64_t seed, const EnvConfig& config);

// Advances time by one step: daylight, plant growth, mob spawning, mob AI and
// mob attacks. Mobs that died this step are removed at the end.
void step_world(WorldState& state, const EnvConfig& config, RngState rng, EventList& events);

// Recomputes torch light for one floor.
void recompute_light(FloorMap& floor, int torch_radius);

// Tile a floor reverts to when something is removed from it.
constexpr TileKind base_floor_tile(int floor) { return floor == 0 ? TileKind::Grass : TileKind::DarkFloor; }

}  // namespace coopcraft
