#include <doctest.h>

#include <numeric>
#include <set>

#include "coopcraft/scoring.hpp"
#include "support.hpp"

using namespace coopcraft;
using namespace coopcraft::testing;

namespace {

AgentState& agent(Env& env, int i) { return env.mutable_state().agents[static_cast<std::size_t>(i)]; }

float weight(AchievementId a) { return kAchievements[static_cast<std::size_t>(a)].weight; }

}  // namespace

TEST_CASE("max_total matches the published maxima") {
  CHECK(max_total(EnvConfig::ma(1)) == 226.0);
  CHECK(max_total(EnvConfig::ma(4)) == 226.0);
  CHECK(max_total(EnvConfig::coop()) == 581.0);
  RewardConfig zero;
  zero.weights.fill(0.0f);
  CHECK(max_total(zero, Variant::MA) == 0.0);
  CHECK(max_total(zero, Variant::Coop) == 0.0);
}

TEST_CASE("achievement table shape") {
  CHECK(kNumAchievements == 63);
  // Coop maximum, rebuilt from the table by group: shared achievements count
  // three times, role achievements once.
  double shared = 0, roles = 0, coop = 0;
  for (const auto& a : kAchievements) {
    if (a.coop_only) {
      coop += a.weight;
    } else if (a.eligible == eligibility::kAll) {
      shared += a.weight;
    } else {
      roles += a.weight;
    }
  }
  CHECK(3 * (shared + coop) + roles == 581.0);
  CHECK(shared + roles == 226.0);
  for (int i = 0; i < kNumAchievements; ++i) {
    CHECK(achievement_from_name(kAchievements[static_cast<std::size_t>(i)].name) == static_cast<AchievementId>(i));
  }
}

TEST_CASE("shared mode pays every agent the weight of a single completion") {
  const std::vector<Completion> newly = {{0, AchievementId::CollectWood}};
  const std::vector<MeterDelta> deltas(3);
  RewardBreakdown out;
  compute_rewards(newly, deltas, RewardConfig{}, out);
  CHECK(out.total == std::vector<float>{1, 1, 1});
}

TEST_CASE("no events and shaping off gives zero") {
  const std::vector<MeterDelta> deltas(3);
  RewardBreakdown out;
  compute_rewards({}, deltas, RewardConfig{}, out);
  CHECK(out.total == std::vector<float>{0, 0, 0});
}

TEST_CASE("shaping charges 0.1 per unit of food or water lost") {
  RewardConfig config;
  config.food_water_shaping = true;
  std::vector<MeterDelta> deltas(3);
  deltas[1] = {-1, -1, 0};
  deltas[2] = {-1, 0, 0};
  RewardBreakdown out;
  compute_rewards({}, deltas, config, out);
  CHECK(out.shaping[0] == 0.0f);
  CHECK(out.shaping[1] == -0.2f);
  CHECK(out.shaping[2] == -0.1f);
}

TEST_CASE("individual mode pays only the completing agent") {
  RewardConfig config;
  config.mode = RewardMode::Individual;
  const std::vector<Completion> newly = {{0, AchievementId::CollectWood}, {2, AchievementId::MakeStoneSword}};
  const std::vector<MeterDelta> deltas(3);
  RewardBreakdown out;
  compute_rewards(newly, deltas, config, out);
  CHECK(out.total == std::vector<float>{1, 0, 3});
}

TEST_CASE("health penalty is opt-in") {
  RewardConfig config;
  std::vector<MeterDelta> deltas(2);
  deltas[0].damage_taken = 3;
  RewardBreakdown out;
  compute_rewards({}, deltas, config, out);
  CHECK(out.total[0] == 0.0f);
  config.health_penalty_enabled = true;
  compute_rewards({}, deltas, config, out);
  CHECK(out.total[0] == doctest::Approx(-0.3).epsilon(1e-6));
}

TEST_CASE("Warrior stone sword after a stone trade is a new completion") {
  Env env = flat_env(quiet());
  auto& s = env.mutable_state();
  s.floors[0].set(at(17, 11), TileKind::CraftingTable);
  agent(env, 0).inventory[Item::Stone] = 2;
  agent(env, 2).inventory[Item::Wood] = 1;
  step(env, {0, 0, request_action(TradableResource::Stone)});
  step(env, {give_action(2), 0, 0});
  const auto r = step(env, {Action::Noop, Action::Noop, Action::MakeStoneSword});
  CHECK(agent(env, 2).inventory.sword_tier == 2);
  const bool found = std::any_of(r.info.completions.begin(), r.info.completions.end(), [](const Completion& c) {
    return c.agent == 2 && c.achievement == AchievementId::MakeStoneSword;
  });
  CHECK(found);
  CHECK(r.rewards[0] == weight(AchievementId::MakeStoneSword));
}

TEST_CASE("a second wood harvest is not a new completion") {
  Env env = flat_env(quiet());
  auto& map = env.mutable_state().floors[0];
  map.set(at(11, 10), TileKind::Tree);
  auto r = step(env, {Action::Do, Action::Noop, Action::Noop});
  CHECK(r.info.completions.size() == 1);
  CHECK(r.rewards == std::vector<float>(3, 1.0f));
  env.mutable_state().floors[0].set(at(11, 10), TileKind::Tree);
  r = step(env, {Action::Do, Action::Noop, Action::Noop});
  CHECK(agent(env, 0).inventory.count(Item::Wood) == 2);
  CHECK(r.info.completions.empty());
  CHECK(r.rewards == std::vector<float>(3, 0.0f));
}

TEST_CASE("a Forager can never complete MAKE_STONE_PICKAXE") {
  Env env = flat_env(quiet());
  auto& s = env.mutable_state();
  s.floors[0].set(at(14, 11), TileKind::CraftingTable);
  agent(env, 1).inventory[Item::Wood] = 5;
  agent(env, 1).inventory[Item::Stone] = 5;
  const auto r = step(env, {Action::Noop, Action::MakeStonePickaxe, Action::Noop});
  CHECK(agent(env, 1).inventory.pickaxe_tier == 0);
  CHECK_FALSE(env.state().ledger.done(1, AchievementId::MakeStonePickaxe));
  // Even a fabricated craft event is filtered by eligibility.
  Event e;
  e.kind = EventKind::Craft;
  e.agent = 1;
  e.subject = static_cast<std::uint8_t>(Action::MakeStonePickaxe);
  std::vector<Completion> newly;
  AchievementLedger ledger(3);
  record_achievements(ledger, env.state().agents, std::span<const Event>(&e, 1), 9, newly);
  CHECK(newly.empty());
  CHECK_FALSE(ledger.done(1, AchievementId::MakeStonePickaxe));
  CHECK(r.info.completions.empty());
}

TEST_CASE("eligibility: None may do everything except cooperative achievements") {
  for (int i = 0; i < kNumAchievements; ++i) {
    const auto a = static_cast<AchievementId>(i);
    CHECK(is_eligible(a, Specialization::None) == !info_of(a).coop_only);
  }
  CHECK(is_eligible(AchievementId::MakeStonePickaxe, Specialization::Miner));
  CHECK_FALSE(is_eligible(AchievementId::MakeStonePickaxe, Specialization::Warrior));
  CHECK(is_eligible(AchievementId::ReviveTeammate, Specialization::Forager));
}

TEST_CASE("shared-mode returns stay equal across agents over a rollout") {
  Env env(EnvConfig{});
  env.reset(5);
  RngState rng(8);
  std::vector<ActionId> actions(3);
  std::vector<double> ret(3, 0.0);
  for (int t = 0; t < 2000; ++t) {
    for (auto& a : actions) a = static_cast<ActionId>(rng.uniform(static_cast<std::uint32_t>(env.num_actions())));
    const auto r = env.step(actions);
    for (int i = 0; i < 3; ++i) ret[static_cast<std::size_t>(i)] += r.rewards[static_cast<std::size_t>(i)];
    CHECK(ret[0] == ret[1]);
    CHECK(ret[1] == ret[2]);
    if (r.done) break;
  }
}

TEST_CASE("each (agent, achievement) pays at most once per episode") {
  Env env(EnvConfig::ma(3));
  env.reset(6);
  RngState rng(9);
  std::vector<ActionId> actions(3);
  std::set<std::pair<int, int>> seen;
  for (int t = 0; t < 3000; ++t) {
    for (auto& a : actions) a = static_cast<ActionId>(rng.uniform(static_cast<std::uint32_t>(env.num_actions())));
    const auto r = env.step(actions);
    for (const auto& c : r.info.completions) {
      CHECK(seen.insert({c.agent, static_cast<int>(c.achievement)}).second);
    }
    if (r.done) break;
  }
  CHECK_FALSE(seen.empty());
}
