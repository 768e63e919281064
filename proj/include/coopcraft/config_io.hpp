#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "coopcraft/config.hpp"

namespace coopcraft {

// Plain-text key=value config. Blank lines and lines starting with '#' are
// ignored; unknown keys and malformed values throw InvalidConfig.
//
//   variant=coop
//   n_agents=3
//   reward.mode=individual
//   reward.weight.COLLECT_WOOD=2
//   worldgen.ore_density=0.08,0.04,0.012,0.008,0.008

void apply_config_value(EnvConfig& config, std::string_view key, std::string_view value);
EnvConfig parse_config(std::string_view text, EnvConfig base = EnvConfig{});
EnvConfig load_config_file(const std::string& path, EnvConfig base = EnvConfig{});

// Every key, one per line, in a stable order. parse_config(to_kv(c)) == c.
std::string to_kv(const EnvConfig& config);

std::vector<std::string> config_keys();

}  // namespace coopcraft
