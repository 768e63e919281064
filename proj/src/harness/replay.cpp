#include "coopcraft/harness/replay.hpp"

#include <sstream>

#include "coopcraft/harness/manifest.hpp"
#include "coopcraft/serialize.hpp"

namespace coopcraft {

namespace {

json events_json(const EventList& events) {
  json out = json::array();
  for (const auto& e : events) out.push_back(event_json(e));
  return out;
}

json floats_json(std::span<const float> values) {
  json out = json::array();
  for (float v : values) out.push_back(v);
  return out;
}

const json& require(const json& obj, const char* key, int line) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw CorruptReplay("line " + std::to_string(line) + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

std::uint64_t parse_hex64(const std::string& text) {
  std::size_t used = 0;
  const std::uint64_t v = std::stoull(text, &used, 16);
  if (used != text.size()) throw std::invalid_argument("trailing characters");
  return v;
}

}  // namespace

ReplayWriter::ReplayWriter(std::ostream& out, const EnvConfig& config, std::uint64_t seed) : out_(out) {
  const json header = {{"type", "header"},
                       {"engine_version", kEngineVersion},
                       {"seed", seed},
                       {"config", config_json(config)},
                       {"manifests", manifests_json(config)}};
  out_ << header.dump() << '\n';
}

void ReplayWriter::step(std::int64_t step, std::span<const ActionId> actions, const StepResult& result) {
  out_ << step_record(step, actions, result).dump() << '\n';
  ++steps_;
}

void ReplayWriter::finish(const WorldState& final_state) {
  const json footer = {{"type", "footer"},
                       {"total_steps", steps_},
                       {"ledger", ledger_summary(final_state)},
                       {"checksum", hex64(state_hash(final_state))}};
  out_ << footer.dump() << '\n';
  out_.flush();
}

json step_record(std::int64_t step, std::span<const ActionId> actions, const StepResult& result) {
  json acts = json::array();
  for (ActionId a : actions) acts.push_back(a);
  return {{"type", "step"},
          {"step", step},
          {"actions", acts},
          {"rewards", floats_json(result.rewards)},
          {"done", result.done},
          {"truncated", result.truncated},
          {"events", events_json(result.info.events)},
          {"hash", hex64(result_hash(result, result.observations))}};
}

json ledger_summary(const WorldState& state) {
  json out = json::array();
  for (int i = 0; i < state.n_agents(); ++i) {
    json done = json::array();
    for (int a = 0; a < kNumAchievements; ++a) {
      if (state.ledger.done(i, static_cast<AchievementId>(a))) done.push_back(name_of(static_cast<AchievementId>(a)));
    }
    out.push_back(done);
  }
  return out;
}

Replay load_replay(std::istream& in) {
  Replay replay;
  std::string line;
  int line_no = 0;
  bool have_footer = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (have_footer) throw CorruptReplay("line " + std::to_string(line_no) + ": data after footer");
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw CorruptReplay("line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      const std::string type = require(j, "type", line_no).get<std::string>();
      if (line_no == 1) {
        if (type != "header") throw CorruptReplay("line 1: expected header");
        replay.engine_version = require(j, "engine_version", 1).get<std::string>();
        if (replay.engine_version != kEngineVersion) {
          throw VersionMismatch("replay engine version '" + replay.engine_version + "' differs from '" +
                                std::string(kEngineVersion) + "'");
        }
        replay.seed = require(j, "seed", 1).get<std::uint64_t>();
        replay.config = config_from_json(require(j, "config", 1));
        replay.header = std::move(j);
      } else if (type == "step") {
        ReplayStep s;
        s.step = require(j, "step", line_no).get<std::int64_t>();
        s.actions = require(j, "actions", line_no).get<std::vector<ActionId>>();
        s.record = std::move(j);
        replay.steps.push_back(std::move(s));
      } else if (type == "footer") {
        replay.footer = std::move(j);
        have_footer = true;
      } else {
        throw CorruptReplay("line " + std::to_string(line_no) + ": unknown record type '" + type + "'");
      }
    } catch (const json::exception& e) {
      throw CorruptReplay("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const InvalidConfig& e) {
      throw CorruptReplay("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (line_no == 0) throw CorruptReplay("empty replay");
  if (!have_footer) throw CorruptReplay("missing footer");
  return replay;
}

VerifyResult verify_replay(const Replay& replay) {
  auto fail = [](std::int64_t step, std::string field, std::string detail) {
    return VerifyResult{false, step, std::move(field), std::move(detail)};
  };
  Env env(replay.config);
  env.reset(replay.seed);
  for (std::size_t i = 0; i < replay.steps.size(); ++i) {
    const ReplayStep& s = replay.steps[i];
    const auto index = static_cast<std::int64_t>(i);
    if (s.step != index) return fail(index, "step", "expected step " + std::to_string(index));
    StepResult result;
    try {
      result = env.step(s.actions);
    } catch (const std::exception& e) {
      return fail(index, "actions", e.what());
    }
    const json expected = step_record(s.step, s.actions, result);
    for (const char* field : {"rewards", "done", "truncated", "events", "hash"}) {
      if (!s.record.contains(field) || s.record.at(field) != expected.at(field)) {
        return fail(index, field, "recorded " + (s.record.contains(field) ? s.record.at(field).dump() : "nothing") +
                                      ", simulated " + expected.at(field).dump());
      }
    }
  }
  const json& f = replay.footer;
  if (!f.contains("total_steps") || f.at("total_steps") != replay.steps.size()) {
    return fail(-1, "total_steps", "footer disagrees with the number of step records");
  }
  if (!f.contains("ledger") || f.at("ledger") != ledger_summary(env.state())) {
    return fail(-1, "ledger", "achievement ledger differs");
  }
  try {
    if (parse_hex64(f.at("checksum").get<std::string>()) != state_hash(env.state())) {
      return fail(-1, "checksum", "final state hash differs");
    }
  } catch (const std::exception& e) {
    return fail(-1, "checksum", e.what());
  }
  return {};
}

VerifyResult verify_replay(std::istream& in) { return verify_replay(load_replay(in)); }

}  // namespace coopcraft
