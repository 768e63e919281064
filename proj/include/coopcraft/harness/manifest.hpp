#pragma once

#include <json.hpp>

#include "coopcraft/config.hpp"
#include "coopcraft/events.hpp"
#include "coopcraft/observation.hpp"

namespace coopcraft {

using nlohmann::json;

json action_table_json(const EnvConfig& config);
json obs_layout_json(const ObsLayout& layout);
json capability_table_json();
json achievements_json(const EnvConfig& config);
// All of the above under "actions", "observation", "capabilities", "achievements".
json manifests_json(const EnvConfig& config);

// Config as a flat object of key -> string value (the key=value file keys).
json config_json(const EnvConfig& config);
EnvConfig config_from_json(const json& j);

json event_json(const Event& e);

}  // namespace coopcraft
