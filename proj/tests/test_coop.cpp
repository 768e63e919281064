#include <doctest.h>

#include "coopcraft/coop.hpp"
#include "support.hpp"

using namespace coopcraft;
using namespace coopcraft::testing;

namespace {

AgentState& agent(Env& env, int i) { return env.mutable_state().agents[static_cast<std::size_t>(i)]; }

int team_total(const WorldState& s, TradableResource r) {
  int n = 0;
  for (const auto& a : s.agents) n += holding(a, r);
  return n;
}

}  // namespace

TEST_CASE("capability table") {
  CHECK_FALSE(capability_check(Specialization::Forager, Capability::CraftPickaxe));
  CHECK(capability_check(Specialization::None, Capability::CraftPickaxe));
  CHECK(capability_check(Specialization::Warrior, Capability::CraftAdvancedSword));
  CHECK(capability_check(Specialization::Miner, Capability::CraftPickaxe));
  CHECK_FALSE(capability_check(Specialization::Miner, Capability::DrinkSource));
  CHECK_FALSE(capability_check(Specialization::Warrior, Capability::CraftPickaxe));
  // Every capability belongs to exactly one specialization, and None has all of them.
  for (int c = 0; c < kNumCapabilities; ++c) {
    const auto cap = static_cast<Capability>(c);
    int owners = 0;
    for (int s = 0; s < kNumSpecializations; ++s) owners += capability_check(static_cast<Specialization>(s), cap);
    CHECK(owners == 1);
    CHECK(capability_check(Specialization::None, cap));
  }
}

TEST_CASE("open_request inserts with a TTL of 10") {
  WorldState s = generate_world(1, quiet());
  EventList events;
  open_request(s, 0, TradableResource::Stone, events);
  REQUIRE(s.requests.size() == 1);
  CHECK(s.requests[0] == TradeRequest{0, TradableResource::Stone, 10});
  CHECK(count_events(events, EventKind::Request) == 1);
}

TEST_CASE("a second request replaces the first") {
  Env env = flat_env(quiet());
  step(env, {request_action(TradableResource::Stone), 0, 0});
  step(env, {request_action(TradableResource::Wood), 0, 0});
  REQUIRE(env.state().requests.size() == 1);
  CHECK(env.state().requests[0].requester == 0);
  CHECK(env.state().requests[0].resource == TradableResource::Wood);
  // One tick has already aged it at the end of the step.
  CHECK(env.state().requests[0].ttl == kRequestTtl - 1);
}

TEST_CASE("a dead agent cannot request") {
  Env env = flat_env(quiet());
  agent(env, 0).alive = false;
  agent(env, 0).health = 0;
  const auto r = step(env, {request_action(TradableResource::Stone), 0, 0});
  CHECK(env.state().requests.empty());
  CHECK(count_events(r.info.events, EventKind::Request) == 0);
  EventList events;
  open_request(env.mutable_state(), 0, TradableResource::Stone, events);
  CHECK(env.state().requests.empty());
}

TEST_CASE("Miner gives stone to the requesting Warrior") {
  Env env = flat_env(quiet());
  agent(env, 0).inventory[Item::Stone] = 3;
  step(env, {0, 0, request_action(TradableResource::Stone)});
  const auto r = step(env, {give_action(2), 0, 0});
  CHECK(agent(env, 0).inventory.count(Item::Stone) == 2);
  CHECK(agent(env, 2).inventory.count(Item::Stone) == 1);
  REQUIRE(count_events(r.info.events, EventKind::Trade) == 1);
  const auto it = std::find_if(r.info.events.begin(), r.info.events.end(),
                               [](const Event& e) { return e.kind == EventKind::Trade; });
  CHECK(it->agent == 0);
  CHECK(it->other == 2);
  CHECK(it->subject == static_cast<int>(TradableResource::Stone));
}

TEST_CASE("a give without a matching request is a silent no-op") {
  Env env = flat_env(quiet());
  agent(env, 0).inventory[Item::Stone] = 3;
  const WorldState before = env.state();
  EventList events;
  CHECK_FALSE(fulfill_give(env.mutable_state(), env.config(), 0, 2, events));
  CHECK(events.empty());
  CHECK(env.state() == before);
  CHECK_FALSE(fulfill_give(env.mutable_state(), env.config(), 0, 0, events));
}

TEST_CASE("trades work across floors and distance") {
  Env env = flat_env(quiet());
  agent(env, 0).floor = 2;
  agent(env, 0).pos = at(40, 40);
  agent(env, 0).inventory[Item::Iron] = 1;
  EventList events;
  open_request(env.mutable_state(), 2, TradableResource::Iron, events);
  CHECK(fulfill_give(env.mutable_state(), env.config(), 0, 2, events));
  CHECK(agent(env, 0).inventory.count(Item::Iron) == 0);
  CHECK(agent(env, 2).inventory.count(Item::Iron) == 1);
}

TEST_CASE("meter gives lose overflow at the receiver's cap") {
  Env env = flat_env(quiet());
  EventList events;
  agent(env, 0).water = agent(env, 0).meter_cap;
  open_request(env.mutable_state(), 0, TradableResource::Water, events);
  const int giver_before = agent(env, 1).water;
  CHECK(fulfill_give(env.mutable_state(), env.config(), 1, 0, events));
  CHECK(agent(env, 1).water == giver_before - 1);
  CHECK(agent(env, 0).water == agent(env, 0).meter_cap);
  CHECK(events.back().amount == 0);
}

TEST_CASE("ore gives are refused when the receiver is at the item cap") {
  Env env = flat_env(quiet());
  EventList events;
  agent(env, 0).inventory[Item::Coal] = 1;
  agent(env, 2).inventory[Item::Coal] = kItemCap;
  open_request(env.mutable_state(), 2, TradableResource::Coal, events);
  CHECK_FALSE(fulfill_give(env.mutable_state(), env.config(), 0, 2, events));
  CHECK(agent(env, 0).inventory.count(Item::Coal) == 1);
}

TEST_CASE("a request opened at step t is gone at step t+10") {
  Env env = flat_env(quiet());
  const std::int64_t t = env.state().time;
  step(env, {request_action(TradableResource::Wood), 0, 0});
  for (int k = 1; k < 10; ++k) {
    CHECK(find_request(env.state(), 0) != nullptr);
    step(env, noops(3));
  }
  CHECK(env.state().time == t + 10);
  CHECK(find_request(env.state(), 0) == nullptr);
}

TEST_CASE("gives land on steps t..t+9 and not on t+10") {
  // Oracle: for an offset k in [0, 12], a give issued k steps after the
  // request succeeds iff k <= 9. Offset 0 is a same-step give from a
  // higher-id agent, which resolves after the requester.
  for (int k = 0; k <= 12; ++k) {
    Env env = flat_env(quiet());
    agent(env, 2).inventory[Item::Wood] = 1;
    StepResult r;
    if (k == 0) {
      r = step(env, {request_action(TradableResource::Wood), 0, give_action(0)});
    } else {
      step(env, {request_action(TradableResource::Wood), 0, 0});
      for (int j = 1; j < k; ++j) step(env, noops(3));
      r = step(env, {0, 0, give_action(0)});
    }
    CHECK_MESSAGE((count_events(r.info.events, EventKind::Trade) == 1) == (k <= 9), "offset " << k);
    CHECK(agent(env, 0).inventory.count(Item::Wood) == (k <= 9 ? 1 : 0));
  }
}

TEST_CASE("empty request set is unchanged by a tick") {
  WorldState s = generate_world(1, quiet());
  const WorldState before = s;
  tick_requests(s);
  CHECK(s == before);
}

TEST_CASE("a requester who dies drops the request that step") {
  Env env = flat_env(quiet());
  step(env, {request_action(TradableResource::Stone), 0, 0});
  for (int k = 0; k < 4; ++k) step(env, noops(3));
  REQUIRE(find_request(env.state(), 0) != nullptr);
  CHECK(find_request(env.state(), 0)->ttl == 5);
  agent(env, 0).health = 1;
  agent(env, 2).pos = at(11, 10);
  agent(env, 2).facing = Direction::Left;
  step(env, {Action::Noop, Action::Noop, Action::Do});
  CHECK_FALSE(agent(env, 0).alive);
  CHECK(find_request(env.state(), 0) == nullptr);
}

TEST_CASE("multi-unit fulfilment through repeated gives") {
  Env env = flat_env(quiet());
  agent(env, 0).inventory[Item::Stone] = 4;
  step(env, {0, 0, request_action(TradableResource::Stone)});
  for (int k = 0; k < 3; ++k) step(env, {give_action(2), 0, 0});
  CHECK(agent(env, 0).inventory.count(Item::Stone) == 1);
  CHECK(agent(env, 2).inventory.count(Item::Stone) == 3);
}

TEST_CASE("random request/give sequences conserve resources") {
  // Independent bookkeeping: each Trade event moves exactly one unit (or
  // zero on meter overflow), and nothing else changes team totals here.
  EnvConfig config = quiet();
  config.survival.hunger_interval = 1 << 20;
  config.survival.thirst_interval = 1 << 20;
  RngState rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    Env env = flat_env(config);
    for (auto& a : env.mutable_state().agents) {
      for (int r = 0; r < 7; ++r) a.inventory.items[static_cast<std::size_t>(r)] = static_cast<std::uint16_t>(rng.uniform(4));
      a.food = static_cast<std::int16_t>(rng.uniform(static_cast<std::uint32_t>(a.meter_cap) + 1));
      a.water = static_cast<std::int16_t>(rng.uniform(static_cast<std::uint32_t>(a.meter_cap) + 1));
    }
    for (int t = 0; t < 40; ++t) {
      std::array<int, kNumTradableResources> before{};
      for (int r = 0; r < kNumTradableResources; ++r) before[static_cast<std::size_t>(r)] = team_total(env.state(), static_cast<TradableResource>(r));
      std::vector<ActionId> actions(3);
      for (auto& a : actions) {
        a = rng.uniform(2) == 0 ? request_action(static_cast<TradableResource>(rng.uniform(9)))
                                : give_action(static_cast<int>(rng.uniform(3)));
      }
      const auto r = env.step(actions);
      std::array<int, kNumTradableResources> lost{};
      for (const auto& e : r.info.events) {
        if (e.kind == EventKind::Trade) lost[e.subject] += 1 - e.amount;
      }
      for (int k = 0; k < kNumTradableResources; ++k) {
        const auto res = static_cast<TradableResource>(k);
        CHECK(team_total(env.state(), res) == before[static_cast<std::size_t>(k)] - lost[static_cast<std::size_t>(k)]);
        if (is_material(res)) CHECK(lost[static_cast<std::size_t>(k)] == 0);
      }
    }
  }
}
