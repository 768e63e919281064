#include "coopcraft/actions.hpp"

#include <array>

namespace coopcraft {

namespace {

constexpr std::array<std::string_view, kNumBaseActions> kBaseNames = {
    "NOOP",
    "LEFT",
    "RIGHT",
    "UP",
    "DOWN",
    "DO",
    "SLEEP",
    "PLACE_STONE",
    "PLACE_TABLE",
    "PLACE_FURNACE",
    "PLACE_PLANT",
    "MAKE_WOOD_PICKAXE",
    "MAKE_STONE_PICKAXE",
    "MAKE_IRON_PICKAXE",
    "MAKE_WOOD_SWORD",
    "MAKE_STONE_SWORD",
    "MAKE_IRON_SWORD",
    "REST",
    "DESCEND",
    "ASCEND",
    "MAKE_DIAMOND_PICKAXE",
    "MAKE_DIAMOND_SWORD",
    "MAKE_IRON_ARMOUR",
    "MAKE_DIAMOND_ARMOUR",
    "SHOOT_ARROW",
    "MAKE_ARROW",
    "CAST_FIREBALL",
    "CAST_ICEBALL",
    "PLACE_TORCH",
    "DRINK_POTION_RED",
    "DRINK_POTION_GREEN",
    "DRINK_POTION_BLUE",
    "DRINK_POTION_PINK",
    "DRINK_POTION_CYAN",
    "DRINK_POTION_YELLOW",
    "READ_BOOK",
    "ENCHANT_SWORD",
    "ENCHANT_ARMOUR",
    "MAKE_TORCH",
    "LEVEL_UP_DEXTERITY",
    "LEVEL_UP_STRENGTH",
    "LEVEL_UP_INTELLIGENCE",
    "ENCHANT_BOW",
    "FACE_LEFT",
    "FACE_RIGHT",
    "FACE_UP",
    "FACE_DOWN",
    "MAKE_BOW",
    "PICKUP_TORCH",
    "GATHER_SAPLING",
    "RESERVED_50",
    "RESERVED_51",
    "RESERVED_52",
};

}  // namespace

std::string_view base_action_name(Action a) { return kBaseNames[static_cast<std::size_t>(a)]; }

std::vector<ActionEntry> action_table(bool coop, int n_agents) {
  std::vector<ActionEntry> table;
  table.reserve(kNumBaseActions + (coop ? kNumTradableResources + n_agents : 0));
  for (ActionId i = 0; i < kNumBaseActions; ++i) {
    table.push_back({i, std::string(kBaseNames[i])});
  }
  if (!coop) return table;
  for (int r = 0; r < kNumTradableResources; ++r) {
    std::string name = "REQUEST_";
    for (char c : kResourceNames[static_cast<std::size_t>(r)]) name += static_cast<char>(c - 'a' + 'A');
    table.push_back({request_action(static_cast<TradableResource>(r)), std::move(name)});
  }
  for (int i = 0; i < n_agents; ++i) {
    table.push_back({give_action(i), "GIVE_AGENT_" + std::to_string(i)});
  }
  return table;
}

}  // namespace coopcraft
