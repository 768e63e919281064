#pragma once

#include "coopcraft/config.hpp"
#include "coopcraft/events.hpp"
#include "coopcraft/state.hpp"

namespace coopcraft {

inline constexpr int kRequestTtl = 10;

// Pure table lookup. Specialization None (homogeneous variant) may do anything.
constexpr bool capability_check(Specialization spec, Capability cap) {
  switch (spec) {
    case Specialization::None:
      return true;
    case Specialization::Miner:
      return cap == Capability::CraftPickaxe || cap == Capability::CraftTorch || cap == Capability::PlaceTorch ||
             cap == Capability::PlaceStone;
    case Specialization::Forager:
      return cap == Capability::HuntPassive || cap == Capability::DrinkSource || cap == Capability::PlantSapling ||
             cap == Capability::HarvestCrop;
    case Specialization::Warrior:
      return cap == Capability::CraftAdvancedSword || cap == Capability::CollectBow ||
             cap == Capability::CraftArrow;
  }
  return false;
}

inline bool can(const AgentState& agent, Capability cap) { return capability_check(agent.specialization, cap); }

// Inserts or replaces the agent's request with a fresh TTL. Dead agents are ignored.
void open_request(WorldState& state, int agent, TradableResource resource, EventList& events);

// Open request of `agent`, if any.
const TradeRequest* find_request(const WorldState& state, int agent);

// Moves one unit of the receiver's requested resource from giver to receiver,
// at any distance. Silent no-op when nothing matches.
bool fulfill_give(WorldState& state, const EnvConfig& config, int giver, int receiver, EventList& events);

// Ages every request by one step; drops expired ones and those of dead requesters.
void tick_requests(WorldState& state);

// Units of `r` held by `agent` (meter points for food and water).
int holding(const AgentState& agent, TradableResource r);

}  // namespace coopcraft
