#include "coopcraft/events.hpp"

#include <array>

namespace coopcraft {

std::string_view name_of(EventKind k) {
  static constexpr std::array<std::string_view, 22> kNames = {
      "harvest", "drink",   "eat",      "craft",   "place",        "attack",          "kill",   "damaged",
      "death",   "revive",  "enter_floor", "return_to_surface", "sleep", "wake_up", "shoot", "level_up",
      "enchant", "pickup_torch", "collect_sapling", "survive_night", "request", "trade"};
  return kNames[static_cast<std::size_t>(k)];
}

std::string_view name_of(Capability c) {
  static constexpr std::array<std::string_view, kNumCapabilities> kNames = {
      "craft_pickaxe", "craft_torch",   "place_torch",          "place_stone", "hunt_passive", "drink_source",
      "plant_sapling", "harvest_crop",  "craft_advanced_sword", "collect_bow", "craft_arrow"};
  return kNames[static_cast<std::size_t>(c)];
}

}  // namespace coopcraft
