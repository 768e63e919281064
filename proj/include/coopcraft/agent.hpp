#pragma once

#include <span>
#include <stdexcept>

#include "coopcraft/actions.hpp"
#include "coopcraft/config.hpp"
#include "coopcraft/events.hpp"
#include "coopcraft/rng.hpp"
#include "coopcraft/state.hpp"

namespace coopcraft {

class ActionCountMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidAction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Coop: ids 0,1,2 become Miner, Forager, Warrior. MA: every agent is None.
// Also sets the specialization-dependent caps, damage and starting meters.
void assign_specializations(WorldState& state, const EnvConfig& config);

// Dead or sleeping agents and inert actions resolve to NOOP.
ActionId coerce_action(const WorldState& state, const EnvConfig& config, int agent, ActionId action);

// Resolves one joint action. Movement first (contested cells reject every
// proposer; swaps and longer cycles move together), then interactions in
// ascending agent id.
void resolve_actions(WorldState& state, const EnvConfig& config, std::span<const ActionId> actions,
                     RngState rng, EventList& events);

// Acts on the faced cell: revive, attack, harvest, or nothing.
void apply_do(WorldState& state, const EnvConfig& config, int agent, EventList& events);

int attack_damage(const AgentState& attacker, const CombatConfig& combat);

// Clamps at zero; a zero-health agent dies immediately.
void damage_agent(WorldState& state, int target, int amount, DamageCause cause, int source, EventList& events);

// Returns true if the mob died from this hit.
bool damage_mob(WorldState& state, int mob, int amount, int attacker, bool ranged, EventList& events);

int gain_food(AgentState& agent, int amount);
int gain_water(AgentState& agent, int amount);

void survival_tick(WorldState& state, const EnvConfig& config, EventList& events);

struct Termination {
  bool done = false;
  bool truncated = false;
};

Termination check_termination(const WorldState& state, const EnvConfig& config);

}  // namespace coopcraft
