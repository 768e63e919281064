#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "coopcraft/config_io.hpp"
#include "coopcraft/scoring.hpp"

using namespace coopcraft;

TEST_CASE("key=value parsing") {
  const EnvConfig c = parse_config(
      "# comment\n"
      "\n"
      "variant=ma\n"
      "n_agents = 4\n"
      "reward.mode=individual\n"
      "reward.food_water_shaping=true\n"
      "reward.weight.COLLECT_WOOD=2.5\n"
      "worldgen.base_mob_cap=1,2,3,4\n");
  CHECK(c.variant == Variant::MA);
  CHECK(c.n_agents == 4);
  CHECK(c.reward.mode == RewardMode::Individual);
  CHECK(c.reward.food_water_shaping);
  CHECK(c.reward.weights[static_cast<std::size_t>(AchievementId::CollectWood)] == 2.5f);
  CHECK(c.worldgen.base_mob_cap == std::array<int, 4>{1, 2, 3, 4});
}

TEST_CASE("to_kv round-trips") {
  EnvConfig c = EnvConfig::ma(5);
  c.worldgen.ore_density = {0.1f, 0.2f, 0.3f, 0.4f, 0.05f};
  c.reward.shaping_unit = 0.25f;
  c.reward.weights[3] = 7.0f;
  c.max_episode_steps = 123;
  CHECK(parse_config(to_kv(c)) == c);
  CHECK(parse_config(to_kv(EnvConfig{})) == EnvConfig{});
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("nope=1\n"), InvalidConfig);
  CHECK_THROWS_AS(parse_config("n_agents=three\n"), InvalidConfig);
  CHECK_THROWS_AS(parse_config("variant=solo\n"), InvalidConfig);
  CHECK_THROWS_AS(parse_config("worldgen.base_mob_cap=1,2\n"), InvalidConfig);
  CHECK_THROWS_AS(parse_config("just a line\n"), InvalidConfig);
  CHECK_THROWS_AS(parse_config("reward.food_water_shaping=maybe\n"), InvalidConfig);
  CHECK_THROWS_AS(load_config_file("/nonexistent/coopcraft.cfg"), InvalidConfig);
}

TEST_CASE("config file loading") {
  const std::string path = "coopcraft_test_config.cfg";
  {
    std::ofstream out(path);
    out << "variant=ma\nn_agents=2\n";
  }
  const EnvConfig c = load_config_file(path);
  std::remove(path.c_str());
  CHECK(c.variant == Variant::MA);
  CHECK(c.n_agents == 2);
}

TEST_CASE("every key appears once in to_kv") {
  const auto keys = config_keys();
  const std::string kv = to_kv(EnvConfig{});
  for (const auto& k : keys) {
    const bool present = kv.find("\n" + k + "=") != std::string::npos || kv.rfind(k + "=", 0) == 0;
    CHECK_MESSAGE(present, k);
  }
  CHECK(keys.size() == 42 + kNumAchievements);
}

TEST_CASE("zeroed weights from config give a zero maximum") {
  std::string text;
  for (const auto& a : kAchievements) text += "reward.weight." + std::string(a.name) + "=0\n";
  CHECK(max_total(parse_config(text)) == 0.0);
}
