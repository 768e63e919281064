#include "coopcraft/harness/manifest.hpp"

#include "coopcraft/actions.hpp"
#include "coopcraft/config_io.hpp"
#include "coopcraft/coop.hpp"
#include "coopcraft/scoring.hpp"

namespace coopcraft {

json action_table_json(const EnvConfig& config) {
  json out = json::array();
  for (const auto& e : action_table(config.coop_mode(), config.n_agents)) {
    out.push_back({{"index", e.index}, {"name", e.name}});
  }
  return out;
}

json obs_layout_json(const ObsLayout& layout) {
  json slices = json::array();
  for (const auto& s : layout.slices()) {
    slices.push_back({{"name", s.name}, {"offset", s.offset}, {"length", s.length}, {"shape", s.shape}});
  }
  json inventory = json::array();
  for (const auto& f : inventory_features()) inventory.push_back({{"name", f.name}, {"cap", f.cap}});
  json tiles = json::array();
  for (auto n : kTileNames) tiles.push_back(n);
  tiles.push_back("dark");
  json mobs = json::array();
  for (auto n : kMobNames) mobs.push_back(n);
  json resources = json::array();
  for (auto n : kResourceNames) resources.push_back(n);
  resources.push_back("none");
  return {
      {"total", layout.total()},
      {"window", {layout.window_height(), layout.window_width()}},
      {"slices", slices},
      {"inventory", inventory},
      {"tile_channels", tiles},
      {"mob_channels", mobs},
      {"item_channels", {"torch", "ladder_down", "ladder_up"}},
      {"meters", {"health", "food", "water", "energy"}},
      {"specializations", {"miner", "forager", "warrior"}},
      {"facing", {"left", "right", "up", "down"}},
      {"bearing_channels", {"n", "ne", "e", "se", "s", "sw", "w", "nw", "none", "below", "above"}},
      {"request_channels", resources},
  };
}

json capability_table_json() {
  json out = json::object();
  for (int s = 0; s < 4; ++s) {
    const auto spec = static_cast<Specialization>(s);
    json caps = json::array();
    for (int c = 0; c < kNumCapabilities; ++c) {
      const auto cap = static_cast<Capability>(c);
      if (capability_check(spec, cap)) caps.push_back(name_of(cap));
    }
    out[std::string(name_of(spec))] = caps;
  }
  return out;
}

json achievements_json(const EnvConfig& config) {
  json list = json::array();
  for (int i = 0; i < kNumAchievements; ++i) {
    const auto a = static_cast<AchievementId>(i);
    json eligible = json::array();
    for (int s = 0; s < kNumSpecializations; ++s) {
      if (is_eligible(a, static_cast<Specialization>(s))) eligible.push_back(name_of(static_cast<Specialization>(s)));
    }
    list.push_back({{"id", i},
                    {"name", name_of(a)},
                    {"weight", config.reward.weights[static_cast<std::size_t>(i)]},
                    {"eligible", eligible},
                    {"coop_only", info_of(a).coop_only}});
  }
  return {{"max_total", max_total(config)}, {"list", list}};
}

json manifests_json(const EnvConfig& config) {
  return {{"actions", action_table_json(config)},
          {"observation", obs_layout_json(ObsLayout(config))},
          {"capabilities", capability_table_json()},
          {"achievements", achievements_json(config)}};
}

json config_json(const EnvConfig& config) {
  json out = json::object();
  const std::string kv = to_kv(config);
  std::size_t start = 0;
  while (start < kv.size()) {
    const auto nl = kv.find('\n', start);
    const std::string line = kv.substr(start, nl - start);
    const auto eq = line.find('=');
    out[line.substr(0, eq)] = line.substr(eq + 1);
    start = nl + 1;
  }
  return out;
}

EnvConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InvalidConfig("config must be a JSON object");
  EnvConfig config;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string()) throw InvalidConfig("config value for " + key + " must be a string");
    apply_config_value(config, key, value.get<std::string>());
  }
  config.validate();
  return config;
}

json event_json(const Event& e) {
  json out = {{"kind", name_of(e.kind)}, {"agent", e.agent}};
  if (e.other >= 0) out["other"] = e.other;
  switch (e.kind) {
    case EventKind::Harvest: out["item"] = name_of(static_cast<Item>(e.subject)); break;
    case EventKind::Drink: out["source"] = name_of(static_cast<TileKind>(e.subject)); break;
    case EventKind::Eat: out["source"] = e.subject == 0 ? "cow" : "plant"; break;
    case EventKind::Craft: out["action"] = base_action_name(static_cast<Action>(e.subject)); break;
    case EventKind::Place: out["tile"] = name_of(static_cast<TileKind>(e.subject)); break;
    case EventKind::Attack:
      if (e.other < 0) out["mob"] = name_of(static_cast<MobKind>(e.subject));
      break;
    case EventKind::Kill: out["mob"] = name_of(static_cast<MobKind>(e.subject)); break;
    case EventKind::AgentDamaged:
    case EventKind::Death: {
      static constexpr std::string_view kCauses[] = {"agent", "mob", "arrow", "starvation", "lava"};
      out["cause"] = kCauses[e.subject];
      break;
    }
    case EventKind::EnterFloor: out["floor"] = e.subject; break;
    case EventKind::LevelUp: {
      static constexpr std::string_view kAttrs[] = {"strength", "dexterity", "intelligence"};
      out["attribute"] = kAttrs[e.subject];
      break;
    }
    case EventKind::Enchant: {
      static constexpr std::string_view kTargets[] = {"sword", "armour", "bow"};
      out["target"] = kTargets[e.subject];
      break;
    }
    case EventKind::Request:
    case EventKind::Trade: out["resource"] = name_of(static_cast<TradableResource>(e.subject)); break;
    default: break;
  }
  if (e.capability != kNoCapability) out["capability"] = name_of(static_cast<Capability>(e.capability));
  if (e.amount != 0) out["amount"] = e.amount;
  if (e.flag) out["flag"] = true;
  return out;
}

}  // namespace coopcraft
