#include <doctest.h>

#include <map>

#include "coopcraft/coop.hpp"
#include "support.hpp"

using namespace coopcraft;
using namespace coopcraft::testing;

namespace {

AgentState& agent(Env& env, int i) { return env.mutable_state().agents[static_cast<std::size_t>(i)]; }

void place(Env& env, int i, int x, int y, Direction facing) {
  agent(env, i).pos = at(x, y);
  agent(env, i).facing = facing;
}

bool mentions(const Event& e, int who) { return e.agent == who; }

}  // namespace

TEST_CASE("all-NOOP step changes only time-driven fields") {
  Env env = flat_env(quiet());
  const WorldState before = env.state();
  const auto r = env.step(noops(3));
  const WorldState& after = env.state();
  CHECK(after.time == before.time + 1);
  CHECK(after.floors == before.floors);
  CHECK(after.requests == before.requests);
  for (int i = 0; i < 3; ++i) {
    const auto& a = after.agents[static_cast<std::size_t>(i)];
    const auto& b = before.agents[static_cast<std::size_t>(i)];
    CHECK(a.pos == b.pos);
    CHECK(a.facing == b.facing);
    CHECK(a.inventory == b.inventory);
    CHECK(a.alive == b.alive);
  }
  CHECK(r.info.events.empty());
}

TEST_CASE("a dead agent's DO is coerced to NOOP and emits nothing") {
  const EnvConfig config = quiet();
  Env env = flat_env(config);
  env.mutable_state().floors[0].set(at(11, 10), TileKind::Tree);
  agent(env, 0).alive = false;
  agent(env, 0).health = 0;
  CHECK(coerce_action(env.state(), config, 0, id_of(Action::Do)) == id_of(Action::Noop));
  const auto r = step(env, {Action::Do, Action::Noop, Action::Noop});
  for (const auto& e : r.info.events) CHECK_FALSE(mentions(e, 0));
  CHECK(env.state().floors[0].at(at(11, 10)) == TileKind::Tree);
  CHECK(agent(env, 0).inventory.count(Item::Wood) == 0);
}

TEST_CASE("two agents moving into the same cell both stay") {
  Env env = flat_env(quiet());
  place(env, 0, 4, 5, Direction::Down);
  place(env, 1, 6, 5, Direction::Down);
  step(env, {Action::Right, Action::Left, Action::Noop});
  CHECK(agent(env, 0).pos == at(4, 5));
  CHECK(agent(env, 1).pos == at(6, 5));
  CHECK(agent(env, 0).facing == Direction::Right);
  CHECK(agent(env, 1).facing == Direction::Left);
}

TEST_CASE("two-agent movement matches the enumerated proposal table") {
  // Independent oracle: a move is blocked by a contested target, and a move
  // into an occupied cell goes through only if the occupant vacates it.
  const std::array<Action, 5> moves = {Action::Noop, Action::Left, Action::Right, Action::Up, Action::Down};
  auto target_of = [](Position p, Action a) {
    const auto d = movement_of(id_of(a));
    return d ? offset(p, *d) : p;
  };
  int cases = 0;
  for (int dx = -2; dx <= 2; ++dx) {
    for (int dy = -2; dy <= 2; ++dy) {
      if (dx == 0 && dy == 0) continue;
      const Position p0 = at(10, 10);
      const Position p1 = at(10 + dx, 10 + dy);
      for (Action m0 : moves) {
        for (Action m1 : moves) {
          Env env = flat_env(quiet());
          place(env, 0, p0.x, p0.y, Direction::Down);
          place(env, 1, p1.x, p1.y, Direction::Down);
          place(env, 2, 30, 30, Direction::Down);
          const Position t0 = target_of(p0, m0);
          const Position t1 = target_of(p1, m1);
          const bool prop0 = m0 != Action::Noop;
          const bool prop1 = m1 != Action::Noop;
          Position e0 = p0, e1 = p1;
          if (prop0 && prop1 && t0 == t1) {
            // contested: both stay
          } else {
            const bool swap = prop0 && prop1 && t0 == p1 && t1 == p0;
            bool ok0 = prop0 && (t0 != p1 || swap);
            bool ok1 = prop1 && (t1 != p0 || swap);
            if (prop0 && t0 == p1 && !swap) ok0 = ok1;
            if (prop1 && t1 == p0 && !swap) ok1 = ok0;
            if (ok0) e0 = t0;
            if (ok1) e1 = t1;
          }
          step(env, {m0, m1, Action::Noop});
          CHECK(agent(env, 0).pos == e0);
          CHECK(agent(env, 1).pos == e1);
          CHECK(agent(env, 0).pos != agent(env, 1).pos);
          ++cases;
        }
      }
    }
  }
  CHECK(cases == 24 * 25);
}

TEST_CASE("a chain of moves into vacated cells goes through") {
  Env env = flat_env(quiet());
  place(env, 0, 10, 10, Direction::Down);
  place(env, 1, 11, 10, Direction::Down);
  place(env, 2, 11, 11, Direction::Down);
  // 0 -> (11,10), 1 -> (11,11), 2 -> (10,11): 2 moves into a free cell, so the chain resolves.
  step(env, {Action::Right, Action::Down, Action::Left});
  CHECK(agent(env, 0).pos == at(11, 10));
  CHECK(agent(env, 1).pos == at(11, 11));
  CHECK(agent(env, 2).pos == at(10, 11));
}

TEST_CASE("a blocked chain holds every agent behind the blocker") {
  Env env = flat_env(quiet());
  env.mutable_state().floors[0].set(at(13, 10), TileKind::Stone);
  place(env, 0, 10, 10, Direction::Down);
  place(env, 1, 11, 10, Direction::Down);
  place(env, 2, 12, 10, Direction::Down);
  step(env, {Action::Right, Action::Right, Action::Right});
  CHECK(agent(env, 0).pos == at(10, 10));
  CHECK(agent(env, 1).pos == at(11, 10));
  CHECK(agent(env, 2).pos == at(12, 10));
}

TEST_CASE("Warrior revives a dead Miner: health 1, inventory intact") {
  Env env = flat_env(quiet());
  agent(env, 0).inventory[Item::Stone] = 5;
  agent(env, 0).alive = false;
  agent(env, 0).health = 0;
  const Inventory inv = agent(env, 0).inventory;
  place(env, 2, 11, 10, Direction::Left);
  const auto r = step(env, {Action::Noop, Action::Noop, Action::Do});
  CHECK(agent(env, 0).alive);
  CHECK(agent(env, 0).health == 1);
  CHECK(agent(env, 0).inventory == inv);
  CHECK(agent(env, 0).inventory.count(Item::Stone) == 5);
  CHECK(count_events(r.info.events, EventKind::Revive) == 1);
}

TEST_CASE("DO on an alive teammate is an attack, not a revive") {
  Env env = flat_env(quiet());
  place(env, 2, 11, 10, Direction::Left);
  const int hp = agent(env, 0).health;
  const auto r = step(env, {Action::Noop, Action::Noop, Action::Do});
  CHECK(count_events(r.info.events, EventKind::Revive) == 0);
  CHECK(agent(env, 0).health == hp - 2);
}

TEST_CASE("revive is disabled in the homogeneous variant") {
  Env env = flat_env(quiet_ma(2));
  agent(env, 0).alive = false;
  agent(env, 0).health = 0;
  place(env, 1, 11, 10, Direction::Left);
  const auto r = step(env, {Action::Noop, Action::Do});
  CHECK_FALSE(agent(env, 0).alive);
  CHECK(count_events(r.info.events, EventKind::Revive) == 0);
}

TEST_CASE("DO on empty grass does nothing") {
  Env env = flat_env(quiet());
  const WorldState before = env.state();
  EventList events;
  apply_do(env.mutable_state(), env.config(), 0, events);
  CHECK(events.empty());
  CHECK(env.state() == before);
}

TEST_CASE("Miner with a wood pickaxe mines coal into stone") {
  Env env = flat_env(quiet());
  env.mutable_state().floors[0].set(at(11, 10), TileKind::CoalOre);
  agent(env, 0).inventory.pickaxe_tier = 1;
  EventList events;
  apply_do(env.mutable_state(), env.config(), 0, events);
  CHECK(agent(env, 0).inventory.count(Item::Coal) == 1);
  CHECK(env.state().floors[0].at(at(11, 10)) == TileKind::Stone);
  REQUIRE(events.size() == 1);
  CHECK(events[0].kind == EventKind::Harvest);
  CHECK(events[0].subject == static_cast<int>(Item::Coal));
}

TEST_CASE("ore needs the right pickaxe tier") {
  Env env = flat_env(quiet());
  env.mutable_state().floors[0].set(at(11, 10), TileKind::IronOre);
  agent(env, 0).inventory.pickaxe_tier = 1;
  EventList events;
  apply_do(env.mutable_state(), env.config(), 0, events);
  CHECK(events.empty());
  CHECK(env.state().floors[0].at(at(11, 10)) == TileKind::IronOre);
}

TEST_CASE("only the Forager drinks from water") {
  Env env = flat_env(quiet());
  auto& s = env.mutable_state();
  for (int i = 0; i < 3; ++i) {
    s.floors[0].set(offset(s.agents[static_cast<std::size_t>(i)].pos, Direction::Right), TileKind::Water);
    s.agents[static_cast<std::size_t>(i)].water = 3;
  }
  EventList events;
  for (int i = 0; i < 3; ++i) apply_do(s, env.config(), i, events);
  CHECK(s.agents[0].water == 3);
  CHECK(s.agents[1].water == 4);
  CHECK(s.agents[2].water == 3);
  CHECK(count_events(events, EventKind::Drink) == 1);
}

TEST_CASE("melee damage is base times the sword multiplier") {
  const EnvConfig config = quiet();
  Env env = flat_env(config);
  auto& s = env.mutable_state();
  auto hit_zombie = [&](int attacker) {
    s.mobs.clear();
    const Position front = offset(s.agents[static_cast<std::size_t>(attacker)].pos, Direction::Right);
    s.mobs.push_back(MobState{MobKind::Zombie, 0, front, 5, 3});
    EventList events;
    apply_do(s, config, attacker, events);
    return s.mobs[0].health;
  };
  // Oracle: damage_base (1, or 2 for the Warrior) x multiplier {1,1,2,3,5}[sword tier].
  CHECK(hit_zombie(0) == 4);
  CHECK(hit_zombie(2) == 3);
  s.agents[0].inventory.sword_tier = 2;
  CHECK(hit_zombie(0) == 5 - 1 * 2);
  s.agents[2].inventory.sword_tier = 2;
  CHECK(hit_zombie(2) == 5 - 2 * 2);
  s.agents[0].inventory.sword_tier = 1;
  CHECK(attack_damage(s.agents[0], config.combat) == 1);
  s.agents[2].inventory.sword_tier = 4;
  CHECK(attack_damage(s.agents[2], config.combat) == 10);
}

TEST_CASE("friendly fire to zero health kills and enables revival") {
  Env env = flat_env(quiet());
  agent(env, 1).health = 1;
  place(env, 0, 12, 10, Direction::Right);
  auto r = step(env, {Action::Do, Action::Noop, Action::Noop});
  CHECK(agent(env, 1).health == 0);
  CHECK_FALSE(agent(env, 1).alive);
  CHECK(count_events(r.info.events, EventKind::Death) == 1);
  r = step(env, {Action::Do, Action::Noop, Action::Noop});
  CHECK(agent(env, 1).alive);
  CHECK(agent(env, 1).health == 1);
}

TEST_CASE("full meters leave health unchanged") {
  const EnvConfig config = quiet();
  Env env = flat_env(config);
  const auto before = env.state().agents;
  EventList events;
  survival_tick(env.mutable_state(), config, events);
  for (int i = 0; i < 3; ++i) CHECK(env.state().agents[static_cast<std::size_t>(i)].health == before[static_cast<std::size_t>(i)].health);
  CHECK(count_events(events, EventKind::AgentDamaged) == 0);
}

TEST_CASE("water at zero for damage_interval steps costs one health") {
  EnvConfig config = quiet_ma(1);
  config.survival.thirst_interval = 1000;
  config.survival.hunger_interval = 1000;
  Env env = flat_env(config);
  agent(env, 0).water = 0;
  const int hp = agent(env, 0).health;
  for (int t = 1; t < config.survival.damage_interval; ++t) {
    step(env, {Action::Noop});
    CHECK(agent(env, 0).health == hp);
  }
  step(env, {Action::Noop});
  CHECK(agent(env, 0).health == hp - 1);
  for (int t = 0; t < config.survival.damage_interval; ++t) step(env, {Action::Noop});
  CHECK(agent(env, 0).health == hp - 2);
}

TEST_CASE("health regenerates only while every meter is positive") {
  EnvConfig config = quiet_ma(1);
  config.survival.hunger_interval = 1000;
  config.survival.thirst_interval = 1000;
  Env env = flat_env(config);
  agent(env, 0).health = 5;
  for (int t = 0; t < config.survival.regen_interval; ++t) step(env, {Action::Noop});
  CHECK(agent(env, 0).health == 6);
  agent(env, 0).food = 0;
  for (int t = 0; t < config.survival.regen_interval - 1; ++t) step(env, {Action::Noop});
  CHECK(agent(env, 0).health == 6);
}

TEST_CASE("Forager at the food cap of 12 stays at 12 after eating") {
  Env env = flat_env(quiet());
  auto& s = env.mutable_state();
  REQUIRE(s.agents[1].specialization == Specialization::Forager);
  CHECK(s.agents[1].meter_cap == 12);
  CHECK(s.agents[0].meter_cap == 9);
  CHECK(s.agents[1].food == 12);
  s.floors[0].set(offset(s.agents[1].pos, Direction::Right), TileKind::RipePlant);
  EventList events;
  apply_do(s, env.config(), 1, events);
  CHECK(s.agents[1].food == 12);
  CHECK(count_events(events, EventKind::Eat) == 1);
}

TEST_CASE("termination needs every agent dead") {
  const EnvConfig config = quiet();
  WorldState s = generate_world(1, config);
  s.agents[0].alive = false;
  s.agents[1].alive = false;
  CHECK_FALSE(check_termination(s, config).done);
  s.agents[2].alive = false;
  CHECK(check_termination(s, config).done);
  CHECK_FALSE(check_termination(s, config).truncated);
}

TEST_CASE("max_episode_steps truncates with survivors") {
  EnvConfig config = quiet();
  config.max_episode_steps = 5;
  Env env(config);
  env.reset(2);
  StepResult r;
  for (int t = 0; t < 5; ++t) {
    CHECK_FALSE(r.done);
    r = env.step(noops(3));
  }
  CHECK(r.done);
  CHECK(r.truncated);
}

TEST_CASE("action count and range are checked") {
  Env env(EnvConfig{});
  env.reset(1);
  CHECK_THROWS_AS(env.step(noops(2)), ActionCountMismatch);
  const std::vector<ActionId> bad = {0, 0, static_cast<ActionId>(env.num_actions())};
  CHECK_THROWS_AS(env.step(bad), InvalidAction);
  Env ma(EnvConfig::ma(2));
  ma.reset(1);
  const std::vector<ActionId> coop_only = {request_action(TradableResource::Wood), 0};
  CHECK_THROWS_AS(ma.step(coop_only), InvalidAction);
}

TEST_CASE("dead agents stay frozen and silent until revived") {
  EnvConfig config;
  Env env(config);
  env.reset(21);
  RngState rng(3);
  std::vector<ActionId> actions(3);
  std::vector<std::optional<AgentState>> frozen(3);
  int checked = 0;
  for (int t = 0; t < 4000; ++t) {
    for (auto& a : actions) a = static_cast<ActionId>(rng.uniform(static_cast<std::uint32_t>(env.num_actions())));
    // Some pressure so deaths happen.
    if (t % 50 == 0) {
      AgentState& victim = agent(env, static_cast<int>(rng.uniform(3)));
      if (victim.alive) victim.health = 1;
    }
    const auto r = env.step(actions);
    std::map<int, bool> revived;
    for (const auto& e : r.info.events) {
      if (e.kind == EventKind::Revive) revived[e.other] = true;
    }
    for (int i = 0; i < 3; ++i) {
      const AgentState& a = env.state().agents[static_cast<std::size_t>(i)];
      auto& f = frozen[static_cast<std::size_t>(i)];
      if (f && !revived[i]) {
        CHECK(a.pos == f->pos);
        CHECK(a.floor == f->floor);
        CHECK(a.inventory == f->inventory);
        CHECK(a.food == f->food);
        CHECK(a.water == f->water);
        CHECK(a.energy == f->energy);
        CHECK_FALSE(a.alive);
        for (const auto& e : r.info.events) {
          CHECK_FALSE(e.agent == i);
          if (e.kind == EventKind::Trade) CHECK(e.other != i);
        }
        ++checked;
      }
      f = a.alive ? std::nullopt : std::optional<AgentState>(a);
    }
    if (r.done) {
      env.reset(22 + static_cast<std::uint64_t>(t));
      std::fill(frozen.begin(), frozen.end(), std::nullopt);
    }
  }
  CHECK(checked > 0);
}
