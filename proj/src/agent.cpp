#include "coopcraft/agent.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "coopcraft/coop.hpp"
#include "coopcraft/world.hpp"

namespace coopcraft {

namespace {

constexpr int kCowFood = 6;
constexpr int kPlantFood = 4;
constexpr int kArrowsPerCraft = 2;
constexpr int kTorchesPerCraft = 4;
constexpr float kSaplingChance = 0.1f;
constexpr int kMaxAgents = 256;

AgentState& agent_ref(WorldState& s, int id) { return s.agents[static_cast<std::size_t>(id)]; }

Event make_event(EventKind kind, int agent, int other = -1, int subject = 0) {
  Event e;
  e.kind = kind;
  e.agent = static_cast<std::int16_t>(agent);
  e.other = static_cast<std::int16_t>(other);
  e.subject = static_cast<std::uint8_t>(subject);
  return e;
}

Event with_capability(Event e, Capability c) {
  e.capability = static_cast<std::uint8_t>(c);
  return e;
}

bool near_tile(const WorldState& s, const AgentState& a, TileKind kind) {
  const FloorMap& map = s.floors[a.floor];
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      const Position p{static_cast<std::int16_t>(a.pos.x + dx), static_cast<std::int16_t>(a.pos.y + dy)};
      if (map.at(p) == kind) return true;
    }
  }
  return false;
}

void add_item(Inventory& inv, Item item, int n) {
  inv[item] = static_cast<std::uint16_t>(std::min(kItemCap, inv.count(item) + n));
}

struct Cost {
  Item item;
  int n;
};

struct Recipe {
  std::array<Cost, 4> costs{};
  int n_costs = 0;
  bool needs_furnace = false;
  std::uint8_t Inventory::*tier = nullptr;
  int target = 0;
  std::optional<Capability> capability;

  std::span<const Cost> cost_list() const { return {costs.data(), static_cast<std::size_t>(n_costs)}; }
};

Recipe make_recipe(std::initializer_list<Cost> costs, bool furnace, std::uint8_t Inventory::*tier, int target,
                   std::optional<Capability> cap) {
  Recipe r;
  for (const Cost& c : costs) r.costs[static_cast<std::size_t>(r.n_costs++)] = c;
  r.needs_furnace = furnace;
  r.tier = tier;
  r.target = target;
  r.capability = cap;
  return r;
}

// Crafted tools are an upgrade only: a recipe is refused when the agent
// already holds that tier or better.
std::optional<Recipe> recipe_for(Action a) {
  using enum Item;
  switch (a) {
    case Action::MakeWoodPickaxe:
      return make_recipe({{Wood, 1}}, false, &Inventory::pickaxe_tier, 1, Capability::CraftPickaxe);
    case Action::MakeStonePickaxe:
      return make_recipe({{Wood, 1}, {Stone, 1}}, false, &Inventory::pickaxe_tier, 2, Capability::CraftPickaxe);
    case Action::MakeIronPickaxe:
      return make_recipe({{Wood, 1}, {Stone, 1}, {Coal, 1}, {Iron, 1}}, true, &Inventory::pickaxe_tier, 3,
                         Capability::CraftPickaxe);
    case Action::MakeDiamondPickaxe:
      return make_recipe({{Wood, 1}, {Diamond, 1}}, false, &Inventory::pickaxe_tier, 4, Capability::CraftPickaxe);
    case Action::MakeWoodSword:
      return make_recipe({{Wood, 1}}, false, &Inventory::sword_tier, 1, std::nullopt);
    case Action::MakeStoneSword:
      return make_recipe({{Wood, 1}, {Stone, 1}}, false, &Inventory::sword_tier, 2, Capability::CraftAdvancedSword);
    case Action::MakeIronSword:
      return make_recipe({{Wood, 1}, {Stone, 1}, {Coal, 1}, {Iron, 1}}, true, &Inventory::sword_tier, 3,
                         Capability::CraftAdvancedSword);
    case Action::MakeDiamondSword:
      return make_recipe({{Wood, 1}, {Diamond, 1}}, false, &Inventory::sword_tier, 4, Capability::CraftAdvancedSword);
    case Action::MakeIronArmour:
      return make_recipe({{Iron, 1}, {Coal, 1}}, true, &Inventory::iron_armour, 1, std::nullopt);
    case Action::MakeDiamondArmour:
      return make_recipe({{Diamond, 1}}, false, &Inventory::diamond_armour, 1, std::nullopt);
    case Action::MakeBow:
      return make_recipe({{Wood, 2}}, false, &Inventory::bow, 1, Capability::CollectBow);
    case Action::MakeArrow:
      return make_recipe({{Wood, 1}, {Stone, 1}}, false, nullptr, 0, Capability::CraftArrow);
    case Action::MakeTorch:
      return make_recipe({{Wood, 1}, {Coal, 1}}, false, nullptr, 0, Capability::CraftTorch);
    default:
      return std::nullopt;
  }
}

void craft(WorldState& s, AgentState& a, Action action, EventList& events) {
  const auto recipe = recipe_for(action);
  if (!recipe) return;
  if (recipe->capability && !can(a, *recipe->capability)) return;
  if (!near_tile(s, a, TileKind::CraftingTable)) return;
  if (recipe->needs_furnace && !near_tile(s, a, TileKind::Furnace)) return;
  Inventory& inv = a.inventory;
  if (recipe->tier && inv.*(recipe->tier) >= recipe->target) return;
  for (const Cost& c : recipe->cost_list()) {
    if (inv.count(c.item) < c.n) return;
  }
  if (action == Action::MakeArrow && inv.count(Item::Arrow) >= kItemCap) return;
  if (action == Action::MakeTorch && inv.count(Item::Torch) >= kItemCap) return;
  for (const Cost& c : recipe->cost_list()) inv[c.item] = static_cast<std::uint16_t>(inv.count(c.item) - c.n);
  if (recipe->tier) inv.*(recipe->tier) = static_cast<std::uint8_t>(recipe->target);
  if (action == Action::MakeArrow) add_item(inv, Item::Arrow, kArrowsPerCraft);
  if (action == Action::MakeTorch) add_item(inv, Item::Torch, kTorchesPerCraft);
  Event e = make_event(EventKind::Craft, a.id, -1, static_cast<int>(action));
  if (recipe->capability) e = with_capability(e, *recipe->capability);
  events.push_back(e);
}

// Faced cell that can take a placed object: in bounds, unoccupied, and of an allowed kind.
bool placeable(const WorldState& s, const AgentState& a, Position target, bool allow_liquid) {
  const TileKind t = s.floors[a.floor].at(target);
  const bool kind_ok = is_open_floor(t) || (allow_liquid && (t == TileKind::Water || t == TileKind::Lava));
  return kind_ok && agent_at(s, a.floor, target) < 0 && mob_at(s, a.floor, target) < 0;
}

// Place events carry the floor in `amount`.
Event place_event(const AgentState& a, TileKind kind) {
  Event e = make_event(EventKind::Place, a.id, -1, static_cast<int>(kind));
  e.amount = a.floor;
  return e;
}

void place(WorldState& s, const EnvConfig& config, AgentState& a, Action action, EventList& events) {
  const Position target = offset(a.pos, a.facing);
  FloorMap& map = s.floors[a.floor];
  Inventory& inv = a.inventory;
  switch (action) {
    case Action::PlaceTable:
      if (inv.count(Item::Wood) < 1 || !placeable(s, a, target, false)) return;
      inv[Item::Wood] -= 1;
      map.set(target, TileKind::CraftingTable);
      events.push_back(place_event(a, TileKind::CraftingTable));
      return;
    case Action::PlaceFurnace:
      if (inv.count(Item::Stone) < 1 || !near_tile(s, a, TileKind::CraftingTable) || !placeable(s, a, target, false))
        return;
      inv[Item::Stone] -= 1;
      map.set(target, TileKind::Furnace);
      events.push_back(place_event(a, TileKind::Furnace));
      return;
    case Action::PlaceStone:
      if (!can(a, Capability::PlaceStone) || inv.count(Item::Stone) < 1 || !placeable(s, a, target, true)) return;
      inv[Item::Stone] -= 1;
      map.set(target, TileKind::PlacedStone);
      events.push_back(with_capability(place_event(a, TileKind::PlacedStone),
                                       Capability::PlaceStone));
      return;
    case Action::PlacePlant:
      if (!can(a, Capability::PlantSapling) || inv.count(Item::Sapling) < 1 || map.at(target) != TileKind::Grass ||
          !placeable(s, a, target, false))
        return;
      inv[Item::Sapling] -= 1;
      map.set(target, TileKind::Sapling);
      s.plants.push_back({a.floor, target, 0});
      events.push_back(with_capability(place_event(a, TileKind::Sapling),
                                       Capability::PlantSapling));
      return;
    case Action::PlaceTorch:
      if (!can(a, Capability::PlaceTorch) || inv.count(Item::Torch) < 1 || !placeable(s, a, target, false)) return;
      inv[Item::Torch] -= 1;
      map.set(target, TileKind::Torch);
      recompute_light(map, config.worldgen.torch_radius);
      events.push_back(with_capability(place_event(a, TileKind::Torch),
                                       Capability::PlaceTorch));
      return;
    default:
      return;
  }
}

// Nearest free walkable cell to `p`, searched in growing square rings.
std::optional<Position> free_cell_near(const WorldState& s, int floor, Position p) {
  const FloorMap& map = s.floors[static_cast<std::size_t>(floor)];
  for (int r = 0; r <= 6; ++r) {
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        if (std::max(std::abs(dx), std::abs(dy)) != r) continue;
        const Position q{static_cast<std::int16_t>(p.x + dx), static_cast<std::int16_t>(p.y + dy)};
        const TileKind t = map.at(q);
        if (!is_walkable(t) || t == TileKind::Lava) continue;
        if (agent_at(s, floor, q) < 0 && mob_at(s, floor, q) < 0) return q;
      }
    }
  }
  return std::nullopt;
}

void change_floor(WorldState& s, AgentState& a, int delta, EventList& events) {
  const FloorMap& here = s.floors[a.floor];
  const TileKind under = here.at(a.pos);
  const int dest = a.floor + delta;
  if (delta > 0 && (under != TileKind::LadderDown || dest >= static_cast<int>(s.floors.size()))) return;
  if (delta < 0 && (under != TileKind::LadderUp || dest < 0)) return;
  const FloorMap& there = s.floors[static_cast<std::size_t>(dest)];
  const auto arrival = delta > 0 ? there.ladder_up : there.ladder_down;
  if (!arrival) return;
  const auto cell = free_cell_near(s, dest, *arrival);
  if (!cell) return;
  a.floor = static_cast<std::uint8_t>(dest);
  a.pos = *cell;
  const std::uint16_t bit = static_cast<std::uint16_t>(1u << dest);
  const bool first = (a.floors_visited & bit) == 0;
  a.floors_visited |= bit;
  if (first && a.inventory.xp < 255) ++a.inventory.xp;
  Event e = make_event(EventKind::EnterFloor, a.id, -1, dest);
  e.flag = first;
  events.push_back(e);
  if (dest == 0) events.push_back(make_event(EventKind::ReturnToSurface, a.id));
}

void shoot(WorldState& s, const EnvConfig& config, AgentState& a, EventList& events) {
  Inventory& inv = a.inventory;
  if (inv.bow == 0 || inv.count(Item::Arrow) < 1) return;
  inv[Item::Arrow] -= 1;
  events.push_back(make_event(EventKind::Shoot, a.id));
  const FloorMap& map = s.floors[a.floor];
  const int dmg = 2 * attack_damage(a, config.combat);
  Position p = a.pos;
  for (int step = 0; step < config.combat.arrow_range; ++step) {
    p = offset(p, a.facing);
    if (const int m = mob_at(s, a.floor, p); m >= 0) {
      damage_mob(s, m, dmg, a.id, true, events);
      return;
    }
    if (const int t = agent_at(s, a.floor, p); t >= 0) {
      if (agent_ref(s, t).alive) damage_agent(s, t, dmg, DamageCause::Arrow, a.id, events);
      return;
    }
    const TileKind tile = map.at(p);
    if (!is_walkable(tile) && tile != TileKind::Water) return;
  }
}

void enchant(WorldState& s, AgentState& a, Action action, EventList& events) {
  Inventory& inv = a.inventory;
  if (!near_tile(s, a, TileKind::CraftingTable)) return;
  if (inv.count(Item::Ruby) < 1 && inv.count(Item::Sapphire) < 1) return;
  std::uint8_t* flag = nullptr;
  int subject = 0;
  if (action == Action::EnchantSword && inv.sword_tier > 0) {
    flag = &inv.sword_enchanted;
  } else if (action == Action::EnchantArmour && (inv.iron_armour > 0 || inv.diamond_armour > 0)) {
    flag = &inv.armour_enchanted;
    subject = 1;
  } else if (action == Action::EnchantBow && inv.bow > 0) {
    flag = &inv.bow_enchanted;
    subject = 2;
  }
  if (flag == nullptr || *flag) return;
  if (inv.count(Item::Ruby) >= 1) {
    inv[Item::Ruby] -= 1;
  } else {
    inv[Item::Sapphire] -= 1;
  }
  *flag = 1;
  events.push_back(make_event(EventKind::Enchant, a.id, -1, subject));
}

void level_up(AgentState& a, Action action, EventList& events) {
  Inventory& inv = a.inventory;
  std::uint8_t* attr = nullptr;
  int subject = 0;
  switch (action) {
    case Action::LevelUpStrength: attr = &inv.strength; break;
    case Action::LevelUpDexterity: attr = &inv.dexterity; subject = 1; break;
    case Action::LevelUpIntelligence: attr = &inv.intelligence; subject = 2; break;
    default: return;
  }
  if (inv.xp < 1 || *attr >= kMaxAttribute) return;
  --inv.xp;
  ++*attr;
  events.push_back(make_event(EventKind::LevelUp, a.id, -1, subject));
}

void pickup_torch(WorldState& s, const EnvConfig& config, AgentState& a, EventList& events) {
  const Position target = offset(a.pos, a.facing);
  FloorMap& map = s.floors[a.floor];
  if (map.at(target) != TileKind::Torch || a.inventory.count(Item::Torch) >= kItemCap) return;
  map.set(target, base_floor_tile(a.floor));
  recompute_light(map, config.worldgen.torch_radius);
  add_item(a.inventory, Item::Torch, 1);
  events.push_back(make_event(EventKind::PickupTorch, a.id));
}

void gather_sapling(WorldState& s, AgentState& a, RngState& rng, EventList& events) {
  const Position target = offset(a.pos, a.facing);
  if (s.floors[a.floor].at(target) != TileKind::Grass) return;
  if (a.inventory.count(Item::Sapling) >= kItemCap) return;
  if (!rng.bernoulli(kSaplingChance)) return;
  add_item(a.inventory, Item::Sapling, 1);
  events.push_back(make_event(EventKind::CollectSapling, a.id));
}

void interact(WorldState& s, const EnvConfig& config, int id, ActionId action, RngState rng, EventList& events) {
  AgentState& a = agent_ref(s, id);
  if (!a.alive) return;
  if (const auto r = request_of(action)) {
    open_request(s, id, *r, events);
    return;
  }
  if (const auto receiver = give_target_of(action, config.n_agents)) {
    fulfill_give(s, config, id, *receiver, events);
    return;
  }
  const auto act = static_cast<Action>(action);
  switch (act) {
    case Action::Do: apply_do(s, config, id, events); return;
    case Action::Sleep:
      if (a.energy < config.survival.max_energy) {
        a.sleeping = true;
        events.push_back(make_event(EventKind::Sleep, id));
      }
      return;
    case Action::FaceLeft: a.facing = Direction::Left; return;
    case Action::FaceRight: a.facing = Direction::Right; return;
    case Action::FaceUp: a.facing = Direction::Up; return;
    case Action::FaceDown: a.facing = Direction::Down; return;
    case Action::PlaceTable:
    case Action::PlaceFurnace:
    case Action::PlaceStone:
    case Action::PlacePlant:
    case Action::PlaceTorch:
      place(s, config, a, act, events);
      return;
    case Action::Descend: change_floor(s, a, +1, events); return;
    case Action::Ascend: change_floor(s, a, -1, events); return;
    case Action::ShootArrow: shoot(s, config, a, events); return;
    case Action::EnchantSword:
    case Action::EnchantArmour:
    case Action::EnchantBow:
      enchant(s, a, act, events);
      return;
    case Action::LevelUpStrength:
    case Action::LevelUpDexterity:
    case Action::LevelUpIntelligence:
      level_up(a, act, events);
      return;
    case Action::PickupTorch: pickup_torch(s, config, a, events); return;
    case Action::GatherSapling: gather_sapling(s, a, rng, events); return;
    default: craft(s, a, act, events); return;
  }
}

enum class MoveStatus : std::uint8_t { None, Pending, Accepted, Rejected };

void resolve_movement(WorldState& s, std::span<const ActionId> actions, EventList& events) {
  const int n = s.n_agents();
  std::array<MoveStatus, kMaxAgents> status{};
  std::array<Position, kMaxAgents> target{};
  for (int i = 0; i < n; ++i) {
    AgentState& a = agent_ref(s, i);
    const auto dir = movement_of(actions[static_cast<std::size_t>(i)]);
    if (!a.alive || !dir) continue;
    a.facing = *dir;
    const Position t = offset(a.pos, *dir);
    const TileKind tile = s.floors[a.floor].at(t);
    if (!is_walkable(tile) || mob_at(s, a.floor, t) >= 0) continue;
    status[static_cast<std::size_t>(i)] = MoveStatus::Pending;
    target[static_cast<std::size_t>(i)] = t;
  }
  // Contested cells reject every proposer.
  for (int i = 0; i < n; ++i) {
    if (status[static_cast<std::size_t>(i)] == MoveStatus::None) continue;
    for (int j = i + 1; j < n; ++j) {
      if (status[static_cast<std::size_t>(j)] == MoveStatus::None) continue;
      if (s.agents[static_cast<std::size_t>(i)].floor == s.agents[static_cast<std::size_t>(j)].floor &&
          target[static_cast<std::size_t>(i)] == target[static_cast<std::size_t>(j)]) {
        status[static_cast<std::size_t>(i)] = MoveStatus::Rejected;
        status[static_cast<std::size_t>(j)] = MoveStatus::Rejected;
      }
    }
  }
  // A move into an occupied cell succeeds only if the occupant leaves.
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      auto& st = status[static_cast<std::size_t>(i)];
      if (st != MoveStatus::Pending) continue;
      const int occ = agent_at(s, s.agents[static_cast<std::size_t>(i)].floor, target[static_cast<std::size_t>(i)]);
      const MoveStatus occ_status = occ < 0 ? MoveStatus::Accepted : status[static_cast<std::size_t>(occ)];
      if (occ_status == MoveStatus::Accepted) {
        st = MoveStatus::Accepted;
        changed = true;
      } else if (occ_status == MoveStatus::None || occ_status == MoveStatus::Rejected) {
        st = MoveStatus::Rejected;
        changed = true;
      }
    }
  }
  // Still pending means a closed cycle (swaps included); it executes as an exchange.
  for (int i = 0; i < n; ++i) {
    const auto st = status[static_cast<std::size_t>(i)];
    if (st == MoveStatus::Accepted || st == MoveStatus::Pending) {
      agent_ref(s, i).pos = target[static_cast<std::size_t>(i)];
    }
  }
  for (int i = 0; i < n; ++i) {
    const AgentState& a = s.agents[static_cast<std::size_t>(i)];
    if (a.alive && s.floors[a.floor].at(a.pos) == TileKind::Lava) {
      damage_agent(s, i, a.health, DamageCause::Lava, -1, events);
    }
  }
}

}  // namespace

void assign_specializations(WorldState& s, const EnvConfig& config) {
  constexpr std::array<Specialization, 3> kOrder = {Specialization::Miner, Specialization::Forager,
                                                    Specialization::Warrior};
  for (auto& a : s.agents) {
    a.specialization = config.coop_mode() && a.id < 3 ? kOrder[static_cast<std::size_t>(a.id)] : Specialization::None;
    const bool forager = a.specialization == Specialization::Forager;
    a.meter_cap = static_cast<std::int16_t>(forager ? config.survival.forager_meter_cap : config.survival.meter_cap);
    a.food = a.meter_cap;
    a.water = a.meter_cap;
    const int factor = a.specialization == Specialization::Warrior ? config.combat.warrior_factor : 1;
    a.damage_base = static_cast<std::int16_t>(config.combat.damage_base * factor);
  }
}

ActionId coerce_action(const WorldState& s, const EnvConfig& config, int agent, ActionId action) {
  if (action >= config.num_actions()) {
    throw InvalidAction("action " + std::to_string(action) + " out of range for " +
                        std::to_string(config.num_actions()) + " actions");
  }
  const AgentState& a = s.agents[static_cast<std::size_t>(agent)];
  if (!a.alive || a.sleeping) return id_of(Action::Noop);
  if (action < kNumBaseActions && is_inert(static_cast<Action>(action))) return id_of(Action::Noop);
  return action;
}

void resolve_actions(WorldState& s, const EnvConfig& config, std::span<const ActionId> actions, RngState rng,
                     EventList& events) {
  const int n = s.n_agents();
  if (static_cast<int>(actions.size()) != n) {
    throw ActionCountMismatch("expected " + std::to_string(n) + " actions, got " + std::to_string(actions.size()));
  }
  std::array<ActionId, kMaxAgents> coerced{};
  for (int i = 0; i < n; ++i) {
    coerced[static_cast<std::size_t>(i)] = coerce_action(s, config, i, actions[static_cast<std::size_t>(i)]);
  }
  const std::span<const ActionId> joint(coerced.data(), static_cast<std::size_t>(n));
  resolve_movement(s, joint, events);
  for (int i = 0; i < n; ++i) {
    const ActionId a = joint[static_cast<std::size_t>(i)];
    if (a == id_of(Action::Noop) || a == id_of(Action::Rest) || movement_of(a)) continue;
    interact(s, config, i, a, rng.split(static_cast<std::uint64_t>(i)), events);
  }
}

int attack_damage(const AgentState& attacker, const CombatConfig& combat) {
  return attacker.damage_base * combat.sword_multiplier[attacker.inventory.sword_tier];
}

void damage_agent(WorldState& s, int target, int amount, DamageCause cause, int source, EventList& events) {
  AgentState& a = agent_ref(s, target);
  if (!a.alive || amount <= 0) return;
  const int dealt = std::min<int>(amount, a.health);
  a.health = static_cast<std::int16_t>(a.health - dealt);
  a.sleeping = false;
  Event e = make_event(EventKind::AgentDamaged, target, source, static_cast<int>(cause));
  e.amount = static_cast<std::int16_t>(dealt);
  events.push_back(e);
  if (a.health == 0) {
    a.alive = false;
    events.push_back(make_event(EventKind::Death, target, source, static_cast<int>(cause)));
  }
}

bool damage_mob(WorldState& s, int mob, int amount, int attacker, bool ranged, EventList& events) {
  MobState& m = s.mobs[static_cast<std::size_t>(mob)];
  if (!m.alive()) return false;
  m.health = static_cast<std::int16_t>(std::max(0, m.health - amount));
  Event hit = make_event(EventKind::Attack, attacker, -1, static_cast<int>(m.kind));
  hit.amount = static_cast<std::int16_t>(amount);
  hit.flag = ranged;
  if (m.kind == MobKind::Cow) hit = with_capability(hit, Capability::HuntPassive);
  events.push_back(hit);
  if (m.alive()) return false;
  Event kill = make_event(EventKind::Kill, attacker, -1, static_cast<int>(m.kind));
  kill.flag = ranged;
  if (m.kind == MobKind::Cow) kill = with_capability(kill, Capability::HuntPassive);
  events.push_back(kill);
  return true;
}

int gain_food(AgentState& a, int amount) {
  const int before = a.food;
  a.food = static_cast<std::int16_t>(std::min<int>(a.meter_cap, a.food + amount));
  return a.food - before;
}

int gain_water(AgentState& a, int amount) {
  const int before = a.water;
  a.water = static_cast<std::int16_t>(std::min<int>(a.meter_cap, a.water + amount));
  return a.water - before;
}

void apply_do(WorldState& s, const EnvConfig& config, int agent, EventList& events) {
  AgentState& a = agent_ref(s, agent);
  if (!a.alive) return;
  const Position target = offset(a.pos, a.facing);

  if (const int other = agent_at(s, a.floor, target); other >= 0) {
    AgentState& b = agent_ref(s, other);
    if (!b.alive) {
      if (!config.revive_enabled()) return;
      b.alive = true;
      b.health = 1;
      events.push_back(make_event(EventKind::Revive, agent, other));
      return;
    }
    const int dmg = attack_damage(a, config.combat);
    Event hit = make_event(EventKind::Attack, agent, other);
    hit.amount = static_cast<std::int16_t>(dmg);
    events.push_back(hit);
    damage_agent(s, other, dmg, DamageCause::Agent, agent, events);
    return;
  }

  if (const int m = mob_at(s, a.floor, target); m >= 0) {
    const bool cow = s.mobs[static_cast<std::size_t>(m)].kind == MobKind::Cow;
    if (cow && !can(a, Capability::HuntPassive)) return;
    if (damage_mob(s, m, attack_damage(a, config.combat), agent, false, events) && cow) {
      Event eat = with_capability(make_event(EventKind::Eat, agent, -1, 0), Capability::HuntPassive);
      const bool was_full = a.food >= a.meter_cap;
      eat.amount = static_cast<std::int16_t>(gain_food(a, kCowFood));
      eat.flag = !was_full && a.food >= a.meter_cap;
      events.push_back(eat);
    }
    return;
  }

  FloorMap& map = s.floors[a.floor];
  const TileKind tile = map.at(target);
  Inventory& inv = a.inventory;
  auto harvest = [&](Item item, int min_pickaxe, TileKind after) {
    if (inv.pickaxe_tier < min_pickaxe || inv.count(item) >= kItemCap) return;
    add_item(inv, item, 1);
    map.set(target, after);
    events.push_back(make_event(EventKind::Harvest, agent, -1, static_cast<int>(item)));
  };
  switch (tile) {
    case TileKind::Tree: harvest(Item::Wood, 0, TileKind::Grass); return;
    case TileKind::Stone: harvest(Item::Stone, 1, TileKind::Path); return;
    case TileKind::PlacedStone: harvest(Item::Stone, 1, base_floor_tile(a.floor)); return;
    case TileKind::CoalOre: harvest(Item::Coal, 1, TileKind::Stone); return;
    case TileKind::IronOre: harvest(Item::Iron, 2, TileKind::Stone); return;
    case TileKind::DiamondOre: harvest(Item::Diamond, 3, TileKind::Stone); return;
    case TileKind::SapphireOre: harvest(Item::Sapphire, 4, TileKind::Stone); return;
    case TileKind::RubyOre: harvest(Item::Ruby, 4, TileKind::Stone); return;
    case TileKind::Water:
    case TileKind::Fountain: {
      if (!can(a, Capability::DrinkSource)) return;
      const bool was_full = a.water >= a.meter_cap;
      Event e = with_capability(make_event(EventKind::Drink, agent, -1, static_cast<int>(tile)), Capability::DrinkSource);
      e.amount = static_cast<std::int16_t>(gain_water(a, 1));
      e.flag = !was_full && a.water >= a.meter_cap;
      events.push_back(e);
      return;
    }
    case TileKind::RipePlant: {
      if (!can(a, Capability::HarvestCrop)) return;
      map.set(target, TileKind::Sapling);
      for (auto& p : s.plants) {
        if (p.floor == a.floor && p.pos == target) p.age = 0;
      }
      const bool was_full = a.food >= a.meter_cap;
      Event e = with_capability(make_event(EventKind::Eat, agent, -1, 1), Capability::HarvestCrop);
      e.amount = static_cast<std::int16_t>(gain_food(a, kPlantFood));
      e.flag = !was_full && a.food >= a.meter_cap;
      events.push_back(e);
      return;
    }
    default:
      return;
  }
}

void survival_tick(WorldState& s, const EnvConfig& config, EventList& events) {
  const auto& sv = config.survival;
  const bool survived_night = s.time > 0 && s.time % config.worldgen.day_length == 0;
  for (auto& a : s.agents) {
    if (!a.alive) continue;
    if (++a.hunger_counter >= sv.hunger_interval) {
      a.hunger_counter = 0;
      a.food = static_cast<std::int16_t>(std::max(0, a.food - 1));
    }
    if (++a.thirst_counter >= sv.thirst_interval) {
      a.thirst_counter = 0;
      a.water = static_cast<std::int16_t>(std::max(0, a.water - 1));
    }
    if (a.sleeping) {
      if (++a.fatigue_counter >= sv.sleep_recovery_interval) {
        a.fatigue_counter = 0;
        a.energy = static_cast<std::int16_t>(std::min(sv.max_energy, a.energy + 1));
      }
      if (a.energy >= sv.max_energy) {
        a.sleeping = false;
        a.fatigue_counter = 0;
        events.push_back(make_event(EventKind::WakeUp, a.id));
      }
    } else {
      const bool night = a.floor >= 1 || s.daylight < 0.5f;
      const FloorMap& map = s.floors[a.floor];
      bool sheltered = true;
      for (Direction d : {Direction::Left, Direction::Right, Direction::Up, Direction::Down}) {
        sheltered = sheltered && !is_walkable(map.at(offset(a.pos, d)));
      }
      if (night && !sheltered && ++a.fatigue_counter >= sv.fatigue_interval) {
        a.fatigue_counter = 0;
        a.energy = static_cast<std::int16_t>(std::max(0, a.energy - 1));
      }
    }
    if (a.food == 0 || a.water == 0 || a.energy == 0) {
      a.regen_counter = 0;
      if (++a.starve_counter >= sv.damage_interval) {
        a.starve_counter = 0;
        damage_agent(s, a.id, 1, DamageCause::Starvation, -1, events);
      }
    } else {
      a.starve_counter = 0;
      if (++a.regen_counter >= sv.regen_interval) {
        a.regen_counter = 0;
        if (a.health < sv.max_health) ++a.health;
      }
    }
    if (a.alive && survived_night) events.push_back(make_event(EventKind::SurviveNight, a.id));
  }
}

Termination check_termination(const WorldState& s, const EnvConfig& config) {
  const bool all_dead = std::none_of(s.agents.begin(), s.agents.end(), [](const AgentState& a) { return a.alive; });
  Termination t;
  t.truncated = !all_dead && s.time >= config.max_episode_steps;
  t.done = all_dead || t.truncated;
  return t;
}

}  // namespace coopcraft
