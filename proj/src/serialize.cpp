#include "coopcraft/serialize.hpp"

#include <bit>
#include <cstring>
#include <type_traits>

namespace coopcraft {

namespace {

class Writer {
 public:
  explicit Writer(std::vector<std::uint8_t>& out) : out_(out) {}

  template <typename T>
  void put(T v) {
    if constexpr (std::is_enum_v<T>) {
      put(static_cast<std::underlying_type_t<T>>(v));
    } else if constexpr (std::is_same_v<T, bool>) {
      out_.push_back(v ? 1 : 0);
    } else if constexpr (std::is_floating_point_v<T>) {
      if constexpr (sizeof(T) == 4) {
        put(std::bit_cast<std::uint32_t>(v));
      } else {
        put(std::bit_cast<std::uint64_t>(v));
      }
    } else {
      using U = std::make_unsigned_t<T>;
      auto u = static_cast<U>(v);
      for (std::size_t i = 0; i < sizeof(T); ++i) {
        out_.push_back(static_cast<std::uint8_t>(u & 0xFF));
        if constexpr (sizeof(T) > 1) u = static_cast<U>(u >> 8);
      }
    }
  }

  void put(Position p) {
    put(p.x);
    put(p.y);
  }

  void put_size(std::size_t n) { put(static_cast<std::uint64_t>(n)); }

 private:
  std::vector<std::uint8_t>& out_;
};

void write_inventory(Writer& w, const Inventory& inv) {
  for (auto c : inv.items) w.put(c);
  w.put(inv.pickaxe_tier);
  w.put(inv.sword_tier);
  w.put(inv.bow);
  w.put(inv.iron_armour);
  w.put(inv.diamond_armour);
  w.put(inv.sword_enchanted);
  w.put(inv.armour_enchanted);
  w.put(inv.bow_enchanted);
  w.put(inv.strength);
  w.put(inv.dexterity);
  w.put(inv.intelligence);
  w.put(inv.xp);
}

void write_agent(Writer& w, const AgentState& a) {
  w.put(a.id);
  w.put(a.specialization);
  w.put(a.floor);
  w.put(a.pos);
  w.put(a.facing);
  w.put(a.health);
  w.put(a.food);
  w.put(a.water);
  w.put(a.energy);
  w.put(a.alive);
  w.put(a.sleeping);
  w.put(a.damage_base);
  w.put(a.meter_cap);
  write_inventory(w, a.inventory);
  w.put(a.hunger_counter);
  w.put(a.thirst_counter);
  w.put(a.fatigue_counter);
  w.put(a.starve_counter);
  w.put(a.regen_counter);
  w.put(a.floors_visited);
}

void write_floor(Writer& w, const FloorMap& f) {
  w.put(static_cast<std::int32_t>(f.width));
  w.put(static_cast<std::int32_t>(f.height));
  w.put(static_cast<std::int32_t>(f.floor_index));
  for (TileKind t : f.tiles) w.put(t);
  for (std::uint8_t l : f.torch_light) w.put(l);
  w.put(f.ladder_down.has_value());
  w.put(f.ladder_down.value_or(Position{}));
  w.put(f.ladder_up.has_value());
  w.put(f.ladder_up.value_or(Position{}));
}

}  // namespace

std::vector<std::uint8_t> serialize_state(const WorldState& s) {
  std::vector<std::uint8_t> out;
  out.reserve(s.floors.size() * static_cast<std::size_t>(s.width * s.height) * 2 + 4096);
  Writer w(out);
  w.put(static_cast<std::int32_t>(s.width));
  w.put(static_cast<std::int32_t>(s.height));
  w.put(s.time);
  w.put(s.daylight);
  w.put(s.seed);
  w.put_size(s.floors.size());
  for (const auto& f : s.floors) write_floor(w, f);
  w.put_size(s.mobs.size());
  for (const auto& m : s.mobs) {
    w.put(m.kind);
    w.put(m.floor);
    w.put(m.pos);
    w.put(m.health);
    w.put(m.cooldown);
  }
  w.put_size(s.agents.size());
  for (const auto& a : s.agents) write_agent(w, a);
  w.put_size(s.requests.size());
  for (const auto& r : s.requests) {
    w.put(r.requester);
    w.put(r.resource);
    w.put(r.ttl);
  }
  w.put_size(s.plants.size());
  for (const auto& p : s.plants) {
    w.put(p.floor);
    w.put(p.pos);
    w.put(p.age);
  }
  w.put_size(static_cast<std::size_t>(s.ledger.n_agents()));
  for (int i = 0; i < s.ledger.n_agents(); ++i) w.put(s.ledger.row(i));
  return out;
}

std::uint64_t state_hash(const WorldState& state) {
  const auto bytes = serialize_state(state);
  Fnv1a h;
  h.bytes(bytes.data(), bytes.size());
  return h.digest();
}

std::uint64_t result_hash(const StepResult& r, std::span<const float> observations) {
  Fnv1a h;
  for (float v : r.rewards) h.value(std::bit_cast<std::uint32_t>(v));
  h.value(static_cast<std::uint8_t>(r.done));
  h.value(static_cast<std::uint8_t>(r.truncated));
  const StepInfo& info = r.info;
  for (const auto& c : info.completions) {
    h.value(c.agent);
    h.value(static_cast<std::uint8_t>(c.achievement));
  }
  for (const auto& e : info.events) {
    h.value(static_cast<std::uint8_t>(e.kind));
    h.value(e.agent);
    h.value(e.other);
    h.value(e.subject);
    h.value(e.capability);
    h.value(e.amount);
    h.value(static_cast<std::uint8_t>(e.flag));
  }
  for (float v : info.achievement_rewards) h.value(std::bit_cast<std::uint32_t>(v));
  for (float v : info.shaping_rewards) h.value(std::bit_cast<std::uint32_t>(v));
  for (auto a : info.alive) h.value(a);
  for (auto f : info.floor) h.value(f);
  for (float v : info.final_observation) h.value(std::bit_cast<std::uint32_t>(v));
  for (float v : observations) h.value(std::bit_cast<std::uint32_t>(v));
  return h.digest();
}

std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[v & 0xF];
    v >>= 4;
  }
  return out;
}

}  // namespace coopcraft
