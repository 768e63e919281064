#include "coopcraft/config_io.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

namespace coopcraft {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T v{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw InvalidConfig("bad value '" + std::string(text) + "' for " + std::string(key));
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "on") return true;
  if (text == "false" || text == "0" || text == "off") return false;
  throw InvalidConfig("bad boolean '" + std::string(text) + "' for " + std::string(key));
}

template <typename T>
std::string format_number(T v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

template <typename T, std::size_t N>
void parse_list(std::string_view key, std::string_view text, std::array<T, N>& out) {
  std::size_t i = 0;
  while (true) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (i >= N) throw InvalidConfig(std::string(key) + " takes " + std::to_string(N) + " values");
    out[i++] = parse_number<T>(key, item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (i != N) throw InvalidConfig(std::string(key) + " takes " + std::to_string(N) + " values");
}

template <typename T, std::size_t N>
std::string format_list(const std::array<T, N>& values) {
  std::string out;
  for (std::size_t i = 0; i < N; ++i) {
    if (i) out += ',';
    out += format_number(values[i]);
  }
  return out;
}

struct Field {
  std::string key;
  std::function<void(EnvConfig&, std::string_view)> set;
  std::function<std::string(const EnvConfig&)> get;
};

template <typename Member>
Field int_field(std::string key, Member member) {
  return {key,
          [key, member](EnvConfig& c, std::string_view v) { member(c) = parse_number<int>(key, v); },
          [member](const EnvConfig& c) { return format_number(member(const_cast<EnvConfig&>(c))); }};
}

template <typename Member>
Field float_field(std::string key, Member member) {
  return {key,
          [key, member](EnvConfig& c, std::string_view v) { member(c) = parse_number<float>(key, v); },
          [member](const EnvConfig& c) { return format_number(member(const_cast<EnvConfig&>(c))); }};
}

template <typename Member>
Field bool_field(std::string key, Member member) {
  return {key,
          [key, member](EnvConfig& c, std::string_view v) { member(c) = parse_bool(key, v); },
          [member](const EnvConfig& c) { return std::string(member(const_cast<EnvConfig&>(c)) ? "true" : "false"); }};
}

template <typename Member>
Field list_field(std::string key, Member member) {
  return {key,
          [key, member](EnvConfig& c, std::string_view v) { parse_list(key, v, member(c)); },
          [member](const EnvConfig& c) { return format_list(member(const_cast<EnvConfig&>(c))); }};
}

#define COOPCRAFT_REF(expr) [](EnvConfig& c) -> auto& { return expr; }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back({"variant",
                 [](EnvConfig& c, std::string_view v) {
                   if (v == "ma") {
                     c.variant = Variant::MA;
                   } else if (v == "coop") {
                     c.variant = Variant::Coop;
                   } else {
                     throw InvalidConfig("variant must be 'ma' or 'coop', got '" + std::string(v) + "'");
                   }
                 },
                 [](const EnvConfig& c) { return std::string(name_of(c.variant)); }});
    f.push_back(int_field("n_agents", COOPCRAFT_REF(c.n_agents)));
    f.push_back(int_field("max_episode_steps", COOPCRAFT_REF(c.max_episode_steps)));
    f.push_back(int_field("obs_height", COOPCRAFT_REF(c.obs_height)));
    f.push_back(int_field("obs_width", COOPCRAFT_REF(c.obs_width)));
    f.push_back({"reward.mode",
                 [](EnvConfig& c, std::string_view v) {
                   if (v == "shared") {
                     c.reward.mode = RewardMode::Shared;
                   } else if (v == "individual") {
                     c.reward.mode = RewardMode::Individual;
                   } else {
                     throw InvalidConfig("reward.mode must be 'shared' or 'individual', got '" + std::string(v) + "'");
                   }
                 },
                 [](const EnvConfig& c) { return std::string(name_of(c.reward.mode)); }});
    f.push_back(bool_field("reward.food_water_shaping", COOPCRAFT_REF(c.reward.food_water_shaping)));
    f.push_back(float_field("reward.shaping_unit", COOPCRAFT_REF(c.reward.shaping_unit)));
    f.push_back(bool_field("reward.health_penalty_enabled", COOPCRAFT_REF(c.reward.health_penalty_enabled)));
    f.push_back(float_field("reward.health_penalty", COOPCRAFT_REF(c.reward.health_penalty)));
    f.push_back(int_field("worldgen.floor_width", COOPCRAFT_REF(c.worldgen.floor_width)));
    f.push_back(int_field("worldgen.floor_height", COOPCRAFT_REF(c.worldgen.floor_height)));
    f.push_back(int_field("worldgen.n_floors", COOPCRAFT_REF(c.worldgen.n_floors)));
    f.push_back(list_field("worldgen.ore_density", COOPCRAFT_REF(c.worldgen.ore_density)));
    f.push_back(float_field("worldgen.tree_density", COOPCRAFT_REF(c.worldgen.tree_density)));
    f.push_back(list_field("worldgen.base_mob_cap", COOPCRAFT_REF(c.worldgen.base_mob_cap)));
    f.push_back(int_field("worldgen.day_length", COOPCRAFT_REF(c.worldgen.day_length)));
    f.push_back(int_field("worldgen.spawn_radius", COOPCRAFT_REF(c.worldgen.spawn_radius)));
    f.push_back(int_field("worldgen.zombie_damage", COOPCRAFT_REF(c.worldgen.zombie_damage)));
    f.push_back(int_field("worldgen.skeleton_damage", COOPCRAFT_REF(c.worldgen.skeleton_damage)));
    f.push_back(int_field("worldgen.shooter_damage", COOPCRAFT_REF(c.worldgen.shooter_damage)));
    f.push_back(int_field("worldgen.mob_cooldown", COOPCRAFT_REF(c.worldgen.mob_cooldown)));
    f.push_back(int_field("worldgen.skeleton_range", COOPCRAFT_REF(c.worldgen.skeleton_range)));
    f.push_back(int_field("worldgen.shooter_range", COOPCRAFT_REF(c.worldgen.shooter_range)));
    f.push_back(int_field("worldgen.chase_radius", COOPCRAFT_REF(c.worldgen.chase_radius)));
    f.push_back(int_field("worldgen.torch_radius", COOPCRAFT_REF(c.worldgen.torch_radius)));
    f.push_back(int_field("worldgen.plant_ripen_steps", COOPCRAFT_REF(c.worldgen.plant_ripen_steps)));
    f.push_back(int_field("survival.max_health", COOPCRAFT_REF(c.survival.max_health)));
    f.push_back(int_field("survival.max_energy", COOPCRAFT_REF(c.survival.max_energy)));
    f.push_back(int_field("survival.meter_cap", COOPCRAFT_REF(c.survival.meter_cap)));
    f.push_back(int_field("survival.forager_meter_cap", COOPCRAFT_REF(c.survival.forager_meter_cap)));
    f.push_back(int_field("survival.hunger_interval", COOPCRAFT_REF(c.survival.hunger_interval)));
    f.push_back(int_field("survival.thirst_interval", COOPCRAFT_REF(c.survival.thirst_interval)));
    f.push_back(int_field("survival.fatigue_interval", COOPCRAFT_REF(c.survival.fatigue_interval)));
    f.push_back(int_field("survival.sleep_recovery_interval", COOPCRAFT_REF(c.survival.sleep_recovery_interval)));
    f.push_back(int_field("survival.regen_interval", COOPCRAFT_REF(c.survival.regen_interval)));
    f.push_back(int_field("survival.damage_interval", COOPCRAFT_REF(c.survival.damage_interval)));
    f.push_back(int_field("combat.damage_base", COOPCRAFT_REF(c.combat.damage_base)));
    f.push_back(int_field("combat.warrior_factor", COOPCRAFT_REF(c.combat.warrior_factor)));
    f.push_back(list_field("combat.sword_multiplier", COOPCRAFT_REF(c.combat.sword_multiplier)));
    f.push_back(int_field("combat.arrow_range", COOPCRAFT_REF(c.combat.arrow_range)));
    f.push_back(list_field("combat.mob_health", COOPCRAFT_REF(c.combat.mob_health)));
    for (int i = 0; i < kNumAchievements; ++i) {
      const std::string key = "reward.weight." + std::string(kAchievements[static_cast<std::size_t>(i)].name);
      f.push_back({key,
                   [key, i](EnvConfig& c, std::string_view v) {
                     c.reward.weights[static_cast<std::size_t>(i)] = parse_number<float>(key, v);
                   },
                   [i](const EnvConfig& c) { return format_number(c.reward.weights[static_cast<std::size_t>(i)]); }});
    }
    return f;
  }();
  return table;
}

#undef COOPCRAFT_REF

}  // namespace

void apply_config_value(EnvConfig& config, std::string_view key, std::string_view value) {
  for (const auto& f : fields()) {
    if (f.key == key) {
      f.set(config, trim(value));
      return;
    }
  }
  throw InvalidConfig("unknown config key '" + std::string(key) + "'");
}

EnvConfig parse_config(std::string_view text, EnvConfig base) {
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidConfig("line " + std::to_string(line_no) + ": expected key=value");
    }
    apply_config_value(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  base.validate();
  return base;
}

EnvConfig load_config_file(const std::string& path, EnvConfig base) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

std::string to_kv(const EnvConfig& config) {
  std::string out;
  for (const auto& f : fields()) {
    out += f.key;
    out += '=';
    out += f.get(config);
    out += '\n';
  }
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& f : fields()) keys.push_back(f.key);
  return keys;
}

}  // namespace coopcraft
