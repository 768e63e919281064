#include "coopcraft/world.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "coopcraft/agent.hpp"

namespace coopcraft {

int agent_at(const WorldState& s, int floor, Position p) {
  for (const auto& a : s.agents) {
    if (a.floor == floor && a.pos == p) return a.id;
  }
  return -1;
}

int mob_at(const WorldState& s, int floor, Position p) {
  for (std::size_t i = 0; i < s.mobs.size(); ++i) {
    const auto& m = s.mobs[i];
    if (m.floor == floor && m.pos == p && m.alive()) return static_cast<int>(i);
  }
  return -1;
}

int mob_cap(MobKind kind, int n_agents, const WorldGenConfig& config) {
  return config.base_mob_cap[static_cast<std::size_t>(kind)] * n_agents;
}

float daylight_at(std::int64_t time, int day_length) {
  const double phase = static_cast<double>(time % day_length) / static_cast<double>(day_length);
  return static_cast<float>(0.5 + 0.5 * std::cos(2.0 * std::numbers::pi * phase));
}

void recompute_light(FloorMap& floor, int torch_radius) {
  std::fill(floor.torch_light.begin(), floor.torch_light.end(), std::uint8_t{0});
  const int r2 = torch_radius * torch_radius;
  for (int y = 0; y < floor.height; ++y) {
    for (int x = 0; x < floor.width; ++x) {
      const Position p{static_cast<std::int16_t>(x), static_cast<std::int16_t>(y)};
      if (floor.at(p) != TileKind::Torch) continue;
      for (int dy = -torch_radius; dy <= torch_radius; ++dy) {
        for (int dx = -torch_radius; dx <= torch_radius; ++dx) {
          if (dx * dx + dy * dy > r2) continue;
          const Position q{static_cast<std::int16_t>(x + dx), static_cast<std::int16_t>(y + dy)};
          if (floor.in_bounds(q)) floor.torch_light[floor.index(q)] = 255;
        }
      }
    }
  }
}

namespace {

constexpr std::array<Direction, 4> kDirs = {Direction::Left, Direction::Right, Direction::Up, Direction::Down};

// Bilinearly interpolated lattice noise in [0,1].
class ValueNoise {
 public:
  ValueNoise(int width, int height, int spacing, RngState rng)
      : spacing_(spacing), cols_(width / spacing + 2), rows_(height / spacing + 2),
        lattice_(static_cast<std::size_t>(cols_) * rows_) {
    for (auto& v : lattice_) v = rng.uniform01();
  }

  float at(int x, int y) const {
    const float fx = static_cast<float>(x) / static_cast<float>(spacing_);
    const float fy = static_cast<float>(y) / static_cast<float>(spacing_);
    const int x0 = static_cast<int>(fx);
    const int y0 = static_cast<int>(fy);
    const float tx = smooth(fx - static_cast<float>(x0));
    const float ty = smooth(fy - static_cast<float>(y0));
    const float a = lerp(node(x0, y0), node(x0 + 1, y0), tx);
    const float b = lerp(node(x0, y0 + 1), node(x0 + 1, y0 + 1), tx);
    return lerp(a, b, ty);
  }

 private:
  static float smooth(float t) { return t * t * (3.0f - 2.0f * t); }
  static float lerp(float a, float b, float t) { return a + (b - a) * t; }
  float node(int x, int y) const { return lattice_[static_cast<std::size_t>(y) * cols_ + x]; }

  int spacing_;
  int cols_;
  int rows_;
  std::vector<float> lattice_;
};

Position random_cell(RngState& rng, int width, int height, int margin) {
  const auto x = static_cast<std::int16_t>(margin + static_cast<int>(rng.uniform(static_cast<std::uint32_t>(width - 2 * margin))));
  const auto y = static_cast<std::int16_t>(margin + static_cast<int>(rng.uniform(static_cast<std::uint32_t>(height - 2 * margin))));
  return {x, y};
}

// Breadth-first distances over agent-walkable, non-lava cells; -1 when unreachable.
std::vector<int> bfs_distances(const FloorMap& floor, Position start) {
  std::vector<int> dist(floor.tiles.size(), -1);
  std::deque<Position> queue;
  dist[floor.index(start)] = 0;
  queue.push_back(start);
  while (!queue.empty()) {
    const Position p = queue.front();
    queue.pop_front();
    for (Direction d : kDirs) {
      const Position q = offset(p, d);
      if (!floor.in_bounds(q)) continue;
      const TileKind t = floor.at(q);
      if (!is_walkable(t) || t == TileKind::Lava) continue;
      auto& dq = dist[floor.index(q)];
      if (dq >= 0) continue;
      dq = dist[floor.index(p)] + 1;
      queue.push_back(q);
    }
  }
  return dist;
}

// Cell index chosen uniformly among reachable cells at least `min_dist` away,
// falling back to the farthest reachable cell.
Position pick_far_cell(const FloorMap& floor, const std::vector<int>& dist, int min_dist, RngState& rng) {
  std::vector<std::size_t> far;
  std::size_t farthest = 0;
  int best = -1;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] < 0 || !is_open_floor(floor.tiles[i])) continue;
    if (dist[i] > best) {
      best = dist[i];
      farthest = i;
    }
    if (dist[i] >= min_dist) far.push_back(i);
  }
  const std::size_t chosen = far.empty() ? farthest : far[rng.uniform(static_cast<std::uint32_t>(far.size()))];
  return {static_cast<std::int16_t>(chosen % static_cast<std::size_t>(floor.width)),
          static_cast<std::int16_t>(chosen / static_cast<std::size_t>(floor.width))};
}

FloorMap generate_overworld(const WorldGenConfig& cfg, RngState rng, Position& spawn_center) {
  const int w = cfg.floor_width;
  const int h = cfg.floor_height;
  FloorMap floor(w, h, 0, TileKind::Grass);
  const ValueNoise coarse(w, h, 12, rng.split(1));
  const ValueNoise fine(w, h, 5, rng.split(2));
  const ValueNoise moisture(w, h, 8, rng.split(3));
  const ValueNoise tunnels(w, h, 7, rng.split(4));
  RngState cells = rng.split(5);

  const auto& ore = cfg.ore_density;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Position p{static_cast<std::int16_t>(x), static_cast<std::int16_t>(y)};
      const float e = 0.65f * coarse.at(x, y) + 0.35f * fine.at(x, y);
      const float r = cells.uniform01();
      TileKind t = TileKind::Grass;
      if (e < 0.30f) {
        t = TileKind::Water;
      } else if (e < 0.36f) {
        t = TileKind::Sand;
      } else if (e > 0.64f) {
        t = TileKind::Stone;
        if (std::fabs(tunnels.at(x, y) - 0.5f) < 0.035f) {
          t = TileKind::Path;
        } else if (r < ore[0]) {
          t = TileKind::CoalOre;
        } else if (r < ore[0] + ore[1]) {
          t = TileKind::IronOre;
        } else if (e > 0.72f && r < ore[0] + ore[1] + ore[2]) {
          t = TileKind::DiamondOre;
        } else if (e > 0.76f && r > 0.985f) {
          t = TileKind::Lava;
        }
      } else if (moisture.at(x, y) > 0.55f ? r < cfg.tree_density : r < 0.03f) {
        t = TileKind::Tree;
      }
      floor.set(p, t);
    }
  }

  // Spawn on the grass cell nearest the centre, with its 3x3 block cleared.
  const Position centre{static_cast<std::int16_t>(w / 2), static_cast<std::int16_t>(h / 2)};
  Position best = centre;
  int best_d = 1 << 30;
  for (int y = 2; y < h - 2; ++y) {
    for (int x = 2; x < w - 2; ++x) {
      const Position p{static_cast<std::int16_t>(x), static_cast<std::int16_t>(y)};
      if (floor.at(p) != TileKind::Grass) continue;
      const int d = manhattan(p, centre);
      if (d < best_d) {
        best_d = d;
        best = p;
      }
    }
  }
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      floor.set({static_cast<std::int16_t>(best.x + dx), static_cast<std::int16_t>(best.y + dy)}, TileKind::Grass);
    }
  }
  spawn_center = best;
  return floor;
}

FloorMap generate_cavern(const WorldGenConfig& cfg, int index, RngState rng) {
  const int w = cfg.floor_width;
  const int h = cfg.floor_height;
  FloorMap floor(w, h, index, TileKind::Stone);
  RngState walk = rng.split(1);

  const int interior = (w - 2) * (h - 2);
  const int target = static_cast<int>(0.38 * interior);
  Position pos = random_cell(walk, w, h, 3);
  const Position start = pos;
  int carved = 0;
  Direction dir = kDirs[walk.uniform(4)];
  auto carve = [&](Position p) {
    if (p.x < 1 || p.y < 1 || p.x > w - 2 || p.y > h - 2) return;
    if (floor.at(p) != TileKind::DarkFloor) {
      floor.set(p, TileKind::DarkFloor);
      ++carved;
    }
  };
  for (int it = 0; carved < target && it < interior * 40; ++it) {
    carve(pos);
    if (walk.bernoulli(0.3f)) carve(offset(pos, kDirs[walk.uniform(4)]));
    if (walk.bernoulli(0.4f)) dir = kDirs[walk.uniform(4)];
    Position next = offset(pos, dir);
    if (next.x < 1 || next.y < 1 || next.x > w - 2 || next.y > h - 2) {
      dir = kDirs[walk.uniform(4)];
      continue;
    }
    pos = next;
  }

  floor.set(start, TileKind::LadderUp);
  floor.ladder_up = start;
  RngState place = rng.split(2);
  if (index + 1 < cfg.n_floors) {
    const auto dist = bfs_distances(floor, start);
    const Position down = pick_far_cell(floor, dist, (w + h) / 3, place);
    floor.set(down, TileKind::LadderDown);
    floor.ladder_down = down;
  }

  // Ores line the cavern walls; deeper floors are richer and host gems.
  const float depth = 1.0f + 0.25f * static_cast<float>(index - 1);
  const auto& ore = cfg.ore_density;
  const float coal = ore[0] * depth;
  const float iron = ore[1] * depth;
  const float diamond = ore[2] * depth;
  const float sapphire = index >= 2 ? ore[3] * depth : 0.0f;
  const float ruby = index >= 3 ? ore[4] * depth : 0.0f;
  RngState cells = rng.split(3);
  auto near_ladder = [&](Position p) {
    return (floor.ladder_up && chebyshev(p, *floor.ladder_up) <= 2) ||
           (floor.ladder_down && chebyshev(p, *floor.ladder_down) <= 2);
  };
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      const Position p{static_cast<std::int16_t>(x), static_cast<std::int16_t>(y)};
      const TileKind t = floor.at(p);
      const float r = cells.uniform01();
      if (t == TileKind::Stone) {
        bool wall = false;
        for (Direction d : kDirs) wall = wall || floor.at(offset(p, d)) == TileKind::DarkFloor;
        if (!wall) continue;
        if (r < coal) {
          floor.set(p, TileKind::CoalOre);
        } else if (r < coal + iron) {
          floor.set(p, TileKind::IronOre);
        } else if (r < coal + iron + diamond) {
          floor.set(p, TileKind::DiamondOre);
        } else if (r < coal + iron + diamond + sapphire) {
          floor.set(p, TileKind::SapphireOre);
        } else if (r < coal + iron + diamond + sapphire + ruby) {
          floor.set(p, TileKind::RubyOre);
        }
      } else if (t == TileKind::DarkFloor && !near_ladder(p)) {
        // Only open-area cells, so fountains and lava never cut a corridor.
        bool open = true;
        for (int dy = -1; dy <= 1 && open; ++dy) {
          for (int dx = -1; dx <= 1 && open; ++dx) {
            const TileKind n = floor.at({static_cast<std::int16_t>(x + dx), static_cast<std::int16_t>(y + dy)});
            open = n == TileKind::DarkFloor;
          }
        }
        if (!open) continue;
        if (r < 0.01f) {
          floor.set(p, TileKind::Fountain);
        } else if (index >= 3 && r > 0.985f) {
          floor.set(p, TileKind::Lava);
        }
      }
    }
  }
  return floor;
}

bool mob_terrain(MobKind kind, TileKind t) {
  if (kind == MobKind::Cow || kind == MobKind::Zombie) return t == TileKind::Grass;
  return t == TileKind::DarkFloor;
}

bool cell_free(const WorldState& s, int floor, Position p) { return agent_at(s, floor, p) < 0 && mob_at(s, floor, p) < 0; }

void place_initial_mobs(WorldState& s, const EnvConfig& cfg, RngState rng, Position spawn_center) {
  const auto& wg = cfg.worldgen;
  for (int f = 0; f < wg.n_floors; ++f) {
    const FloorMap& floor = s.floors[static_cast<std::size_t>(f)];
    const Position anchor = f == 0 ? spawn_center : floor.ladder_up.value_or(spawn_center);
    for (int k = 0; k < kNumMobKinds; ++k) {
      const auto kind = static_cast<MobKind>(k);
      if (!spawns_on(kind, f)) continue;
      const int cap = mob_cap(kind, cfg.n_agents, wg);
      const int keep_away = kind == MobKind::Cow ? 3 : 7;
      RngState place = rng.split(static_cast<std::uint64_t>(f * kNumMobKinds + k));
      int placed = 0;
      for (int attempt = 0; placed < cap && attempt < cap * 200; ++attempt) {
        const Position p = random_cell(place, floor.width, floor.height, 1);
        if (!mob_terrain(kind, floor.at(p)) || chebyshev(p, anchor) < keep_away || !cell_free(s, f, p)) continue;
        s.mobs.push_back({kind, static_cast<std::uint8_t>(f), p,
                          static_cast<std::int16_t>(cfg.combat.mob_health[static_cast<std::size_t>(k)]), 0});
        ++placed;
      }
    }
  }
}

bool mob_can_enter(const WorldState& s, int floor, Position p) {
  const FloorMap& map = s.floors[static_cast<std::size_t>(floor)];
  return map.in_bounds(p) && is_mob_walkable(map.at(p)) && cell_free(s, floor, p);
}

void try_move(WorldState& s, MobState& m, Direction d) {
  const Position next = offset(m.pos, d);
  if (mob_can_enter(s, m.floor, next)) m.pos = next;
}

void move_toward(WorldState& s, MobState& m, Position target, bool align_first) {
  const int dx = target.x - m.pos.x;
  const int dy = target.y - m.pos.y;
  const Direction h = dx < 0 ? Direction::Left : Direction::Right;
  const Direction v = dy < 0 ? Direction::Up : Direction::Down;
  bool horizontal_first = std::abs(dx) >= std::abs(dy);
  // Ranged mobs close the smaller gap first to line up a shot.
  if (align_first && dx != 0 && dy != 0) horizontal_first = !horizontal_first;
  const Position before = m.pos;
  if (horizontal_first) {
    if (dx != 0) try_move(s, m, h);
    if (m.pos == before && dy != 0) try_move(s, m, v);
  } else {
    if (dy != 0) try_move(s, m, v);
    if (m.pos == before && dx != 0) try_move(s, m, h);
  }
}

bool projectile_path_clear(const WorldState& s, int floor, Position from, Position to) {
  const FloorMap& map = s.floors[static_cast<std::size_t>(floor)];
  const int sx = (to.x > from.x) - (to.x < from.x);
  const int sy = (to.y > from.y) - (to.y < from.y);
  Position p = from;
  for (;;) {
    p = {static_cast<std::int16_t>(p.x + sx), static_cast<std::int16_t>(p.y + sy)};
    if (p == to) return true;
    const TileKind t = map.at(p);
    if (!(is_walkable(t) || t == TileKind::Water)) return false;
    if (!cell_free(s, floor, p)) return false;
  }
}

int nearest_agent(const WorldState& s, const MobState& m, int radius) {
  int best = -1;
  int best_d = radius + 1;
  for (const auto& a : s.agents) {
    if (!a.alive || a.floor != m.floor) continue;
    const int d = manhattan(a.pos, m.pos);
    if (d < best_d) {
      best_d = d;
      best = a.id;
    }
  }
  return best;
}

float spawn_chance(MobKind kind, int floor, float daylight) {
  const float depth = floor >= 3 ? 1.5f : 1.0f;
  switch (kind) {
    case MobKind::Cow: return 0.05f;
    case MobKind::Zombie: return 0.02f + 0.10f * (1.0f - daylight);
    case MobKind::Skeleton: return 0.08f * depth;
    case MobKind::RangedShooter: return 0.06f * depth;
  }
  return 0.0f;
}

void spawn_mobs(WorldState& s, const EnvConfig& cfg, int floor, RngState& rng) {
  std::array<int, kNumMobKinds> counts{};
  for (const auto& m : s.mobs) {
    if (m.floor == floor && m.alive()) ++counts[static_cast<std::size_t>(m.kind)];
  }
  const FloorMap& map = s.floors[static_cast<std::size_t>(floor)];
  for (int k = 0; k < kNumMobKinds; ++k) {
    const auto kind = static_cast<MobKind>(k);
    if (!spawns_on(kind, floor)) continue;
    if (counts[static_cast<std::size_t>(k)] >= mob_cap(kind, cfg.n_agents, cfg.worldgen)) continue;
    if (!rng.bernoulli(spawn_chance(kind, floor, s.daylight))) continue;
    for (int attempt = 0; attempt < 8; ++attempt) {
      const Position p = random_cell(rng, map.width, map.height, 1);
      if (!mob_terrain(kind, map.at(p)) || !cell_free(s, floor, p)) continue;
      bool too_close = false;
      for (const auto& a : s.agents) {
        too_close = too_close || (a.floor == floor && a.alive && chebyshev(a.pos, p) < 4);
      }
      if (too_close) continue;
      s.mobs.push_back({kind, static_cast<std::uint8_t>(floor), p,
                        static_cast<std::int16_t>(cfg.combat.mob_health[static_cast<std::size_t>(k)]), 0});
      break;
    }
  }
}

void act_mob(WorldState& s, const EnvConfig& cfg, std::size_t index, RngState& rng, EventList& events) {
  const auto& wg = cfg.worldgen;
  MobState& m = s.mobs[index];
  if (m.cooldown > 0) --m.cooldown;
  if (m.kind == MobKind::Cow) {
    if (rng.bernoulli(0.5f)) try_move(s, m, kDirs[rng.uniform(4)]);
    return;
  }
  const int target = nearest_agent(s, m, wg.chase_radius);
  if (target < 0) {
    if (rng.bernoulli(0.3f)) try_move(s, m, kDirs[rng.uniform(4)]);
    return;
  }
  const Position tp = s.agents[static_cast<std::size_t>(target)].pos;
  const int dist = manhattan(tp, m.pos);
  if (m.kind == MobKind::Zombie) {
    if (dist == 1) {
      if (m.cooldown == 0) {
        m.cooldown = static_cast<std::int16_t>(wg.mob_cooldown);
        damage_agent(s, target, wg.zombie_damage, DamageCause::Mob, -1, events);
      }
    } else {
      move_toward(s, m, tp, false);
    }
    return;
  }
  const bool skeleton = m.kind == MobKind::Skeleton;
  const int range = skeleton ? wg.skeleton_range : wg.shooter_range;
  const int dmg = skeleton ? wg.skeleton_damage : wg.shooter_damage;
  const bool aligned = tp.x == m.pos.x || tp.y == m.pos.y;
  if (aligned && dist <= range && projectile_path_clear(s, m.floor, m.pos, tp)) {
    if (m.cooldown == 0) {
      m.cooldown = static_cast<std::int16_t>(wg.mob_cooldown);
      damage_agent(s, target, dmg, DamageCause::Mob, -1, events);
    }
    return;
  }
  move_toward(s, m, tp, true);
}

}  // namespace

WorldState generate_world(std::uint64_t seed, const EnvConfig& config) {
  config.validate();
  const auto& wg = config.worldgen;
  WorldState s;
  s.width = wg.floor_width;
  s.height = wg.floor_height;
  s.seed = seed;
  s.time = 0;
  s.daylight = daylight_at(0, wg.day_length);
  s.ledger = AchievementLedger(config.n_agents);

  const RngState gen = RngState(seed).split(static_cast<std::uint64_t>(RngStream::WorldGen));
  Position spawn_center;
  s.floors.reserve(static_cast<std::size_t>(wg.n_floors));
  s.floors.push_back(generate_overworld(wg, gen.split(0), spawn_center));
  for (int f = 1; f < wg.n_floors; ++f) {
    s.floors.push_back(generate_cavern(wg, f, gen.split(static_cast<std::uint64_t>(f))));
  }

  FloorMap& surface = s.floors.front();
  RngState place = gen.split(100);
  const auto dist = bfs_distances(surface, spawn_center);
  if (wg.n_floors > 1) {
    const Position down = pick_far_cell(surface, dist, 12, place);
    surface.set(down, TileKind::LadderDown);
    surface.ladder_down = down;
  }

  std::vector<Position> candidates;
  for (int dy = -wg.spawn_radius; dy <= wg.spawn_radius; ++dy) {
    for (int dx = -wg.spawn_radius; dx <= wg.spawn_radius; ++dx) {
      const Position p{static_cast<std::int16_t>(spawn_center.x + dx), static_cast<std::int16_t>(spawn_center.y + dy)};
      if (!surface.in_bounds(p) || dist[surface.index(p)] < 0) continue;
      if (is_open_floor(surface.at(p))) candidates.push_back(p);
    }
  }
  if (static_cast<int>(candidates.size()) < config.n_agents) {
    throw InvalidConfig("spawn region holds " + std::to_string(candidates.size()) + " walkable cells, " +
                        std::to_string(config.n_agents) + " agents requested");
  }
  RngState shuffle = gen.split(101);
  for (std::size_t i = candidates.size() - 1; i > 0; --i) {
    std::swap(candidates[i], candidates[shuffle.uniform(static_cast<std::uint32_t>(i + 1))]);
  }

  const auto& sv = config.survival;
  s.agents.resize(static_cast<std::size_t>(config.n_agents));
  for (int i = 0; i < config.n_agents; ++i) {
    AgentState& a = s.agents[static_cast<std::size_t>(i)];
    a.id = static_cast<std::int16_t>(i);
    a.pos = candidates[static_cast<std::size_t>(i)];
    a.health = static_cast<std::int16_t>(sv.max_health);
    a.energy = static_cast<std::int16_t>(sv.max_energy);
    a.meter_cap = static_cast<std::int16_t>(sv.meter_cap);
    a.food = a.meter_cap;
    a.water = a.meter_cap;
    a.damage_base = static_cast<std::int16_t>(config.combat.damage_base);
  }

  place_initial_mobs(s, config, gen.split(102), spawn_center);
  return s;
}

void step_world(WorldState& s, const EnvConfig& config, RngState rng, EventList& events) {
  const auto& wg = config.worldgen;
  s.time += 1;
  s.daylight = daylight_at(s.time, wg.day_length);

  for (auto& plant : s.plants) {
    FloorMap& map = s.floors[plant.floor];
    if (map.at(plant.pos) != TileKind::Sapling) continue;
    if (++plant.age >= wg.plant_ripen_steps) map.set(plant.pos, TileKind::RipePlant);
  }

  // Only floors hosting a living agent are simulated.
  std::uint32_t occupied = 0;
  for (const auto& a : s.agents) {
    if (a.alive) occupied |= 1u << a.floor;
  }

  RngState spawn_rng = rng.split(1);
  for (int f = 0; f < wg.n_floors; ++f) {
    if (occupied & (1u << f)) spawn_mobs(s, config, f, spawn_rng);
  }

  RngState ai_rng = rng.split(2);
  for (std::size_t i = 0; i < s.mobs.size(); ++i) {
    const MobState& m = s.mobs[i];
    if (!m.alive() || !(occupied & (1u << m.floor))) continue;
    act_mob(s, config, i, ai_rng, events);
  }

  std::erase_if(s.mobs, [](const MobState& m) { return !m.alive(); });
}

}  // namespace coopcraft
