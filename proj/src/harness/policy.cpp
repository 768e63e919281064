#include "coopcraft/harness/policy.hpp"

#include <array>
#include <deque>
#include <optional>

#include "coopcraft/coop.hpp"
#include "coopcraft/world.hpp"

namespace coopcraft {

namespace {

constexpr std::array<Direction, 4> kDirs = {Direction::Left, Direction::Right, Direction::Up, Direction::Down};
constexpr int kTableSearchRadius = 10;

ActionId move_action(Direction d) { return static_cast<ActionId>(id_of(Action::Left) + static_cast<int>(d)); }
ActionId face_action(Direction d) { return static_cast<ActionId>(id_of(Action::FaceLeft) + static_cast<int>(d)); }

const AgentState& agent_of(const WorldState& s, int id) { return s.agents[static_cast<std::size_t>(id)]; }

struct Approach {
  bool arrived = false;
  Direction move = Direction::Down;
  Direction face = Direction::Down;
};

bool passable(const WorldState& s, int floor, Position p, int self) {
  const TileKind t = s.floors[static_cast<std::size_t>(floor)].at(p);
  if (!is_walkable(t) || t == TileKind::Lava) return false;
  const int occupant = agent_at(s, floor, p);
  if (occupant >= 0 && occupant != self) return false;
  return mob_at(s, floor, p) < 0;
}

// Breadth-first search for the nearest cell from which a 4-neighbour satisfies
// `is_target`. Returns the first move, or the facing once there.
template <typename Pred>
std::optional<Approach> approach(const WorldState& s, int agent, Pred is_target, int max_dist = 96) {
  const AgentState& a = agent_of(s, agent);
  const FloorMap& map = s.floors[a.floor];
  std::vector<std::int16_t> first(map.tiles.size(), -1);
  std::vector<std::int16_t> dist(map.tiles.size(), -1);
  std::deque<Position> queue;
  dist[map.index(a.pos)] = 0;
  queue.push_back(a.pos);
  while (!queue.empty()) {
    const Position c = queue.front();
    queue.pop_front();
    const std::size_t ci = map.index(c);
    for (Direction d : kDirs) {
      const Position n = offset(c, d);
      if (!map.in_bounds(n) || !is_target(n)) continue;
      Approach out;
      if (c == a.pos) {
        out.arrived = true;
        out.face = d;
      } else {
        out.move = static_cast<Direction>(first[ci]);
      }
      return out;
    }
    if (dist[ci] >= max_dist) continue;
    for (Direction d : kDirs) {
      const Position n = offset(c, d);
      if (!map.in_bounds(n) || dist[map.index(n)] >= 0 || !passable(s, a.floor, n, agent)) continue;
      dist[map.index(n)] = static_cast<std::int16_t>(dist[ci] + 1);
      first[map.index(n)] = c == a.pos ? static_cast<std::int16_t>(d) : first[ci];
      queue.push_back(n);
    }
  }
  return std::nullopt;
}

// Face the target and then perform `action`; walk there first.
template <typename Pred>
std::optional<ActionId> go_and(const WorldState& s, int agent, Pred is_target, ActionId action) {
  const auto plan = approach(s, agent, is_target);
  if (!plan) return std::nullopt;
  if (!plan->arrived) return move_action(plan->move);
  if (agent_of(s, agent).facing != plan->face) return face_action(plan->face);
  return action;
}

// Walk next to the target; `action` needs no facing (crafting near a table).
template <typename Pred>
std::optional<ActionId> go_near_and(const WorldState& s, int agent, Pred is_target, ActionId action) {
  const auto plan = approach(s, agent, is_target);
  if (!plan) return std::nullopt;
  if (!plan->arrived) return move_action(plan->move);
  return action;
}

auto tile_is(const WorldState& s, int floor, TileKind kind) {
  return [&s, floor, kind](Position p) { return s.floors[static_cast<std::size_t>(floor)].at(p) == kind; };
}

bool table_nearby(const WorldState& s, const AgentState& a) {
  const FloorMap& map = s.floors[a.floor];
  for (int dy = -kTableSearchRadius; dy <= kTableSearchRadius; ++dy) {
    for (int dx = -kTableSearchRadius; dx <= kTableSearchRadius; ++dx) {
      const Position p{static_cast<std::int16_t>(a.pos.x + dx), static_cast<std::int16_t>(a.pos.y + dy)};
      if (map.at(p) == TileKind::CraftingTable) return true;
    }
  }
  return false;
}

ActionId wander(RngState& rng) { return move_action(kDirs[rng.uniform(4)]); }

std::optional<ActionId> collect_wood(const WorldState& s, int agent) {
  return go_and(s, agent, tile_is(s, agent_of(s, agent).floor, TileKind::Tree), id_of(Action::Do));
}

std::optional<ActionId> place_table(const WorldState& s, int agent) {
  const AgentState& a = agent_of(s, agent);
  auto open = [&s, &a](Position p) {
    return is_open_floor(s.floors[a.floor].at(p)) && agent_at(s, a.floor, p) < 0 && mob_at(s, a.floor, p) < 0;
  };
  return go_and(s, agent, open, id_of(Action::PlaceTable));
}

// Crafts at a table, placing one first when none is close.
std::optional<ActionId> craft_at_table(const WorldState& s, int agent, Action recipe, int spare_wood) {
  const AgentState& a = agent_of(s, agent);
  if (table_nearby(s, a)) {
    return go_near_and(s, agent, tile_is(s, a.floor, TileKind::CraftingTable), id_of(recipe));
  }
  if (spare_wood >= 1) return place_table(s, agent);
  return collect_wood(s, agent);
}

bool wants(const AgentState& mate, TradableResource r) {
  switch (r) {
    case TradableResource::Food: return mate.food < mate.meter_cap - 1;
    case TradableResource::Water: return mate.water < mate.meter_cap - 1;
    default: return holding(mate, r) < 2;
  }
}

// Shared reflexes, in priority order: fight back, revive, answer requests,
// ask for sustenance, sleep when exhausted.
std::optional<ActionId> reflexes(const WorldState& s, const EnvConfig& config, int agent, int sustenance_reserve) {
  const AgentState& a = agent_of(s, agent);
  const FloorMap& map = s.floors[a.floor];

  for (Direction d : kDirs) {
    const int m = mob_at(s, a.floor, offset(a.pos, d));
    if (m >= 0 && is_hostile(s.mobs[static_cast<std::size_t>(m)].kind)) {
      return a.facing == d ? id_of(Action::Do) : face_action(d);
    }
  }

  if (config.revive_enabled()) {
    // A lower-id teammate already facing the body revives first; a second DO
    // in the same step would strike the revived agent.
    auto claimed = [&s, &a, agent](Position body) {
      for (const auto& m : s.agents) {
        if (m.id < agent && m.alive && m.floor == a.floor && offset(m.pos, m.facing) == body) return true;
      }
      return false;
    };
    auto dead_mate = [&s, &a, &claimed](Position p) {
      const int other = agent_at(s, a.floor, p);
      return other >= 0 && !agent_of(s, other).alive && !claimed(p);
    };
    if (auto act = go_and(s, agent, dead_mate, id_of(Action::Do))) return act;
  }

  if (config.coop_mode()) {
    for (const auto& r : s.requests) {
      if (r.requester == agent) continue;
      const AgentState& mate = agent_of(s, r.requester);
      if (!mate.alive || !wants(mate, r.resource)) continue;
      const bool sustenance = !is_material(r.resource);
      const int reserve = sustenance ? sustenance_reserve : 1;
      if (holding(a, r.resource) >= reserve) return give_action(r.requester);
    }

    const TradeRequest* mine = find_request(s, agent);
    const bool forager = a.specialization == Specialization::Forager;
    if (!forager && a.water <= 4 && (mine == nullptr || mine->resource != TradableResource::Water)) {
      return request_action(TradableResource::Water);
    }
    if (!forager && a.food <= 4 && (mine == nullptr || mine->resource != TradableResource::Food)) {
      return request_action(TradableResource::Food);
    }
  }

  if (a.energy <= 2 && !a.sleeping && (map.floor_index > 0 || s.daylight < 0.5f)) return id_of(Action::Sleep);
  return std::nullopt;
}

std::optional<ActionId> stay_close(const WorldState& s, int agent, int mate, int radius) {
  const AgentState& a = agent_of(s, agent);
  const AgentState& m = agent_of(s, mate);
  if (m.floor != a.floor || manhattan(a.pos, m.pos) <= radius) return std::nullopt;
  const auto plan = approach(s, agent, [&m](Position p) { return p == m.pos; });
  if (!plan || plan->arrived) return std::nullopt;
  return move_action(plan->move);
}

int seat_with(const WorldState& s, Specialization spec, int fallback) {
  for (const auto& a : s.agents) {
    if (a.specialization == spec) return a.id;
  }
  return fallback % s.n_agents();
}

class RandomBot : public Controller {
 public:
  ActionId act(const WorldState&, const EnvConfig& config, int, RngState& rng) const override {
    return static_cast<ActionId>(rng.uniform(static_cast<std::uint32_t>(config.num_actions())));
  }
  std::string_view name() const override { return "random"; }
};

class NoopBot : public Controller {
 public:
  ActionId act(const WorldState&, const EnvConfig&, int, RngState&) const override { return id_of(Action::Noop); }
  std::string_view name() const override { return "noop"; }
};

// Mines stone (and better) and answers teammates' material requests.
class MinerTrader : public Controller {
 public:
  ActionId act(const WorldState& s, const EnvConfig& config, int agent, RngState& rng) const override {
    const AgentState& a = agent_of(s, agent);
    if (!a.alive) return id_of(Action::Noop);
    if (auto r = reflexes(s, config, agent, 6)) return *r;
    const Inventory& inv = a.inventory;
    const int wood = inv.count(Item::Wood);
    const int stone = inv.count(Item::Stone);
    std::optional<ActionId> act;
    if (inv.pickaxe_tier == 0) {
      act = wood >= 1 ? craft_at_table(s, agent, Action::MakeWoodPickaxe, wood - 1) : collect_wood(s, agent);
    } else if (stone < 6) {
      act = go_and(s, agent, tile_is(s, a.floor, TileKind::Stone), id_of(Action::Do));
    } else if (inv.pickaxe_tier < 2 && wood >= 1) {
      act = craft_at_table(s, agent, Action::MakeStonePickaxe, wood - 1);
    } else if (inv.count(Item::Coal) < 1 && inv.pickaxe_tier >= 1) {
      act = go_and(s, agent, tile_is(s, a.floor, TileKind::CoalOre), id_of(Action::Do));
    } else if (wood < 3) {
      act = collect_wood(s, agent);
    } else {
      act = stay_close(s, agent, seat_with(s, Specialization::Warrior, agent + 2), 4);
    }
    return act.value_or(wander(rng));
  }
  std::string_view name() const override { return "miner-trader"; }
};

// Keeps its own meters topped up and feeds teammates who ask.
class ForagerFeeder : public Controller {
 public:
  ActionId act(const WorldState& s, const EnvConfig& config, int agent, RngState& rng) const override {
    const AgentState& a = agent_of(s, agent);
    if (!a.alive) return id_of(Action::Noop);
    if (auto r = reflexes(s, config, agent, 4)) return *r;
    auto water = tile_is(s, a.floor, TileKind::Water);
    auto cow = [&s, &a](Position p) {
      const int m = mob_at(s, a.floor, p);
      return m >= 0 && s.mobs[static_cast<std::size_t>(m)].kind == MobKind::Cow;
    };
    bool food_asked = false;
    for (const auto& r : s.requests) food_asked |= r.requester != agent && r.resource == TradableResource::Food;
    const bool next_to_water = approach(s, agent, water, 0).has_value();
    const bool thirsty = a.water < a.meter_cap - 3 || (next_to_water && a.water < a.meter_cap);
    const bool hungry = a.food < a.meter_cap - 3 || (food_asked && a.food < a.meter_cap);

    std::optional<ActionId> act;
    auto drink = [&] { return go_and(s, agent, water, id_of(Action::Do)); };
    auto eat = [&] {
      auto found = go_and(s, agent, cow, id_of(Action::Do));
      return found ? found : go_and(s, agent, tile_is(s, a.floor, TileKind::RipePlant), id_of(Action::Do));
    };
    if (thirsty && (!hungry || a.water <= a.food)) act = drink();
    if (!act && hungry) act = eat();
    if (!act && thirsty) act = drink();
    if (!act && a.inventory.count(Item::Sapling) > 0) {
      act = go_and(s, agent, tile_is(s, a.floor, TileKind::Grass), id_of(Action::PlacePlant));
    }
    if (!act) act = stay_close(s, agent, seat_with(s, Specialization::Miner, agent + 2), 6);
    if (!act && rng.bernoulli(0.5f)) {
      act = go_and(s, agent, tile_is(s, a.floor, TileKind::Grass), id_of(Action::GatherSapling));
    }
    return act.value_or(wander(rng));
  }
  std::string_view name() const override { return "forager-feeder"; }
};

// Requests stone for its sword, then hunts.
class WarriorRequester : public Controller {
 public:
  ActionId act(const WorldState& s, const EnvConfig& config, int agent, RngState& rng) const override {
    const AgentState& a = agent_of(s, agent);
    if (!a.alive) return id_of(Action::Noop);
    if (auto r = reflexes(s, config, agent, 6)) return *r;
    const Inventory& inv = a.inventory;
    const int wood = inv.count(Item::Wood);
    const int stone = inv.count(Item::Stone);
    std::optional<ActionId> act;
    if (inv.sword_tier < 2) {
      const TradeRequest* mine = find_request(s, agent);
      if (stone < 1 && config.coop_mode() && (mine == nullptr || mine->resource != TradableResource::Stone)) {
        return request_action(TradableResource::Stone);
      }
      if (wood < 1 || (stone < 1 && wood < 3)) {
        act = collect_wood(s, agent);
      } else if (stone >= 1) {
        act = craft_at_table(s, agent, Action::MakeStoneSword, wood - 1);
      } else {
        act = stay_close(s, agent, seat_with(s, Specialization::Miner, agent + 1), 3);
      }
    } else {
      auto hostile = [&s, &a](Position p) {
        const int m = mob_at(s, a.floor, p);
        return m >= 0 && is_hostile(s.mobs[static_cast<std::size_t>(m)].kind);
      };
      const auto plan = approach(s, agent, hostile, 8);
      if (plan) {
        act = plan->arrived ? (a.facing == plan->face ? id_of(Action::Do) : face_action(plan->face))
                            : move_action(plan->move);
      } else {
        act = stay_close(s, agent, seat_with(s, Specialization::Forager, agent + 2), 5);
      }
    }
    return act.value_or(wander(rng));
  }
  std::string_view name() const override { return "warrior-requester"; }
};

}  // namespace

std::unique_ptr<Controller> make_bot(std::string_view name) {
  if (name == "random") return std::make_unique<RandomBot>();
  if (name == "noop") return std::make_unique<NoopBot>();
  if (name == "miner-trader") return std::make_unique<MinerTrader>();
  if (name == "forager-feeder") return std::make_unique<ForagerFeeder>();
  if (name == "warrior-requester") return std::make_unique<WarriorRequester>();
  throw UnknownPolicy("unknown policy '" + std::string(name) + "'");
}

std::unique_ptr<Controller> role_bot(const WorldState& state, int agent) {
  static constexpr std::array<std::string_view, 3> kRoles = {"miner-trader", "forager-feeder", "warrior-requester"};
  const Specialization spec = agent_of(state, agent).specialization;
  const int role = spec == Specialization::None ? agent % 3 : static_cast<int>(spec);
  return make_bot(kRoles[static_cast<std::size_t>(role)]);
}

TeamPolicy::TeamPolicy(std::string_view spec, const WorldState& state) : spec_(spec) {
  constexpr std::string_view kScripted = "scripted:";
  for (int i = 0; i < state.n_agents(); ++i) {
    if (spec == "random" || spec == "noop") {
      seats_.push_back(make_bot(spec));
    } else if (spec.starts_with(kScripted)) {
      const std::string_view bot = spec.substr(kScripted.size());
      seats_.push_back(bot == "trio" ? role_bot(state, i) : make_bot(bot));
    } else {
      throw UnknownPolicy("unknown policy '" + std::string(spec) + "'");
    }
  }
}

RngState policy_rng(std::uint64_t policy_seed, std::int64_t step, int agent) {
  return stream_for(RngState(policy_seed), step, RngStream::Policy).split(static_cast<std::uint64_t>(agent));
}

void TeamPolicy::act(const WorldState& state, const EnvConfig& config, std::uint64_t policy_seed,
                     std::span<ActionId> out) const {
  for (int i = 0; i < state.n_agents(); ++i) {
    RngState rng = policy_rng(policy_seed, state.time, i);
    out[static_cast<std::size_t>(i)] = seats_[static_cast<std::size_t>(i)]->act(state, config, i, rng);
  }
}

}  // namespace coopcraft
