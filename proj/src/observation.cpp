#include "coopcraft/observation.hpp"

#include <algorithm>
#include <stdexcept>

#include "coopcraft/coop.hpp"

namespace coopcraft {

const std::vector<InventoryFeature>& inventory_features() {
  static const std::vector<InventoryFeature> features = {
      {"wood", 10},           {"stone", 10},         {"coal", 10},          {"iron", 10},
      {"diamond", 10},        {"sapphire", 10},      {"ruby", 10},          {"sapling", 10},
      {"torch", 10},          {"arrow", 10},         {"pickaxe_tier", 4},   {"sword_tier", 4},
      {"bow", 1},             {"iron_armour", 1},    {"diamond_armour", 1}, {"sword_enchanted", 1},
      {"armour_enchanted", 1}, {"bow_enchanted", 1}, {"strength", 5},       {"dexterity", 5},
      {"intelligence", 5},    {"xp", 8},
  };
  return features;
}

std::size_t ObsLayout::add(std::string name, std::vector<int> shape) {
  std::size_t length = 1;
  for (int d : shape) length *= static_cast<std::size_t>(d);
  const std::size_t at = total_;
  slices_.push_back({std::move(name), at, length, std::move(shape)});
  total_ += length;
  return at;
}

ObsLayout::ObsLayout(const EnvConfig& config)
    : coop_(config.coop_mode()),
      window_h_(config.obs_height),
      window_w_(config.obs_width),
      n_floors_(config.worldgen.n_floors),
      n_agents_(config.n_agents),
      max_health_(static_cast<float>(config.survival.max_health)),
      max_energy_(static_cast<float>(config.survival.max_energy)) {
  const int h = window_h_;
  const int w = window_w_;
  off_.tiles = add("tiles", {h, w, kTileChannels});
  off_.mobs = add("mobs", {h, w, kNumMobKinds});
  off_.items = add("items", {h, w, kItemMapChannels});
  off_.inventory = add("inventory", {static_cast<int>(inventory_features().size())});
  off_.meters = add("meters", {4});
  if (coop_) off_.specialization = add("specialization", {kNumSpecializations});
  off_.facing = add("facing", {kNumDirections});
  off_.floor = add("floor", {n_floors_});
  off_.light = add("light", {1});
  off_.sleeping = add("sleeping", {1});
  off_.teammates = total_;
  for (int k = 0; k + 1 < n_agents_; ++k) {
    const std::string prefix = "teammate[" + std::to_string(k) + "].";
    const std::size_t start = add(prefix + "position", {h, w});
    const std::size_t health = add(prefix + "health", {1});
    const std::size_t spec = coop_ ? add(prefix + "specialization", {kNumSpecializations}) : 0;
    const std::size_t bearing = add(prefix + "bearing", {kBearingChannels});
    const std::size_t request = coop_ ? add(prefix + "request", {kRequestChannels}) : 0;
    const std::size_t alive = add(prefix + "alive", {1});
    if (k == 0) {
      off_.tm_position = 0;
      off_.tm_health = health - start;
      off_.tm_specialization = spec - start;
      off_.tm_bearing = bearing - start;
      off_.tm_request = request - start;
      off_.tm_alive = alive - start;
      off_.teammate_stride = total_ - start;
    }
  }
}

const ObsSlice& ObsLayout::slice(std::string_view name) const {
  for (const auto& s : slices_) {
    if (s.name == name) return s;
  }
  throw std::out_of_range("no observation slice named " + std::string(name));
}

std::optional<std::size_t> ObsLayout::find(std::string_view name) const {
  for (const auto& s : slices_) {
    if (s.name == name) return s.offset;
  }
  return std::nullopt;
}

int compass_bearing(Position from, Position to) {
  const int dx = to.x - from.x;
  const int dy = to.y - from.y;
  const int ax = std::abs(dx);
  const int ay = std::abs(dy);
  // tan(22.5 deg) ~ 0.414 splits the cardinal and diagonal sectors.
  if (ax * 1000 <= ay * 414) return dy < 0 ? 0 : 4;
  if (ay * 1000 <= ax * 414) return dx > 0 ? 2 : 6;
  if (dx > 0) return dy < 0 ? 1 : 3;
  return dy < 0 ? 7 : 5;
}

bool is_dark_cell(const WorldState& s, int floor, Position cell, Position observer) {
  if (floor == 0 || chebyshev(cell, observer) <= 1) return false;
  return s.floors[static_cast<std::size_t>(floor)].light_at(cell, s.daylight) < kDarknessThreshold;
}

void encode_observation(const WorldState& s, int agent, const ObsLayout& layout, std::span<float> out) {
  std::fill(out.begin(), out.end(), 0.0f);
  const auto& off = layout.offsets();
  const AgentState& me = s.agents[static_cast<std::size_t>(agent)];
  const FloorMap& map = s.floors[me.floor];
  const int h = layout.window_height();
  const int w = layout.window_width();
  const int top = me.pos.y - h / 2;
  const int left = me.pos.x - w / 2;
  auto in_window = [&](Position p) {
    return p.y >= top && p.y < top + h && p.x >= left && p.x < left + w;
  };
  auto cell_index = [&](Position p) { return static_cast<std::size_t>((p.y - top) * w + (p.x - left)); };

  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const Position p{static_cast<std::int16_t>(left + c), static_cast<std::int16_t>(top + r)};
      const std::size_t cell = static_cast<std::size_t>(r * w + c);
      float* tile = &out[off.tiles + cell * kTileChannels];
      if (map.in_bounds(p) && is_dark_cell(s, me.floor, p, me.pos)) {
        tile[kDarkChannel] = 1.0f;
        continue;
      }
      const TileKind t = map.at(p);
      tile[static_cast<int>(t)] = 1.0f;
      float* item = &out[off.items + cell * kItemMapChannels];
      if (t == TileKind::Torch) item[0] = 1.0f;
      if (t == TileKind::LadderDown) item[1] = 1.0f;
      if (t == TileKind::LadderUp) item[2] = 1.0f;
    }
  }
  for (const auto& m : s.mobs) {
    if (!m.alive() || m.floor != me.floor || !in_window(m.pos) || is_dark_cell(s, me.floor, m.pos, me.pos)) continue;
    out[off.mobs + cell_index(m.pos) * kNumMobKinds + static_cast<std::size_t>(m.kind)] = 1.0f;
  }

  const auto& features = inventory_features();
  const Inventory& inv = me.inventory;
  const std::array<int, 22> raw = {
      inv.count(Item::Wood),     inv.count(Item::Stone),   inv.count(Item::Coal),  inv.count(Item::Iron),
      inv.count(Item::Diamond),  inv.count(Item::Sapphire), inv.count(Item::Ruby),  inv.count(Item::Sapling),
      inv.count(Item::Torch),    inv.count(Item::Arrow),   inv.pickaxe_tier,       inv.sword_tier,
      inv.bow,                   inv.iron_armour,          inv.diamond_armour,     inv.sword_enchanted,
      inv.armour_enchanted,      inv.bow_enchanted,        inv.strength,           inv.dexterity,
      inv.intelligence,          inv.xp,
  };
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[off.inventory + i] = std::min(1.0f, static_cast<float>(raw[i]) / features[i].cap);
  }

  const float cap = static_cast<float>(me.meter_cap);
  out[off.meters + 0] = static_cast<float>(me.health) / layout.max_health();
  out[off.meters + 1] = static_cast<float>(me.food) / cap;
  out[off.meters + 2] = static_cast<float>(me.water) / cap;
  out[off.meters + 3] = static_cast<float>(me.energy) / layout.max_energy();
  if (layout.coop() && me.specialization != Specialization::None) {
    out[off.specialization + static_cast<std::size_t>(me.specialization)] = 1.0f;
  }
  out[off.facing + static_cast<std::size_t>(me.facing)] = 1.0f;
  out[off.floor + me.floor] = 1.0f;
  out[off.light] = std::min(1.0f, map.light_at(me.pos, s.daylight));
  out[off.sleeping] = me.sleeping ? 1.0f : 0.0f;

  std::size_t base = off.teammates;
  for (const auto& mate : s.agents) {
    if (mate.id == me.id) continue;
    const bool same_floor = mate.floor == me.floor;
    const bool visible = same_floor && in_window(mate.pos) && !is_dark_cell(s, me.floor, mate.pos, me.pos);
    if (visible) out[base + off.tm_position + cell_index(mate.pos)] = 1.0f;
    out[base + off.tm_health] = static_cast<float>(mate.health) / layout.max_health();
    if (layout.coop() && mate.specialization != Specialization::None) {
      out[base + off.tm_specialization + static_cast<std::size_t>(mate.specialization)] = 1.0f;
    }
    int bearing = kBearingNone;
    if (!same_floor) {
      bearing = mate.floor > me.floor ? kBearingBelow : kBearingAbove;
    } else if (!in_window(mate.pos)) {
      bearing = compass_bearing(me.pos, mate.pos);
    }
    out[base + off.tm_bearing + static_cast<std::size_t>(bearing)] = 1.0f;
    if (layout.coop()) {
      const TradeRequest* request = find_request(s, mate.id);
      const std::size_t slot = request ? static_cast<std::size_t>(request->resource) : kNumTradableResources;
      out[base + off.tm_request + slot] = 1.0f;
    }
    out[base + off.tm_alive] = mate.alive ? 1.0f : 0.0f;
    base += off.teammate_stride;
  }
}

}  // namespace coopcraft
