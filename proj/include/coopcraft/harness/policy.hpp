#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coopcraft/actions.hpp"
#include "coopcraft/config.hpp"
#include "coopcraft/rng.hpp"
#include "coopcraft/state.hpp"

namespace coopcraft {

class UnknownPolicy : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Chooses one agent's action. Bots are stateless: the action is a function of
// (state, agent, rng) only, so a bot can take over any seat at any step.
class Controller {
 public:
  virtual ~Controller() = default;
  virtual ActionId act(const WorldState& state, const EnvConfig& config, int agent, RngState& rng) const = 0;
  virtual std::string_view name() const = 0;
};

// "random", "noop", "miner-trader", "forager-feeder", "warrior-requester".
std::unique_ptr<Controller> make_bot(std::string_view name);

// Bot suited to a seat: the scripted role bot for its specialization
// (round-robin over the three roles when there is none).
std::unique_ptr<Controller> role_bot(const WorldState& state, int agent);

// One controller per seat, parsed from "random", "noop", "scripted:trio" or
// "scripted:<bot>" (that bot in every seat).
class TeamPolicy {
 public:
  TeamPolicy(std::string_view spec, const WorldState& state);

  // Writes one action per agent. Randomness comes from
  // stream_for(RngState(policy_seed), state.time, RngStream::Policy).
  void act(const WorldState& state, const EnvConfig& config, std::uint64_t policy_seed, std::span<ActionId> out) const;

  const std::string& spec() const { return spec_; }
  const Controller& controller(int agent) const { return *seats_[static_cast<std::size_t>(agent)]; }

 private:
  std::string spec_;
  std::vector<std::unique_ptr<Controller>> seats_;
};

RngState policy_rng(std::uint64_t policy_seed, std::int64_t step, int agent);

}  // namespace coopcraft
