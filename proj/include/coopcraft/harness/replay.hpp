#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "coopcraft/env.hpp"

namespace coopcraft {

inline constexpr std::string_view kEngineVersion = "coopcraft-1.0.0";

class CorruptReplay : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VersionMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON-lines replay: header line, one line per step, footer line.
class ReplayWriter {
 public:
  ReplayWriter(std::ostream& out, const EnvConfig& config, std::uint64_t seed);

  void step(std::int64_t step, std::span<const ActionId> actions, const StepResult& result);
  void finish(const WorldState& final_state);

 private:
  std::ostream& out_;
  std::int64_t steps_ = 0;
};

nlohmann::json step_record(std::int64_t step, std::span<const ActionId> actions, const StepResult& result);
nlohmann::json ledger_summary(const WorldState& state);

struct ReplayStep {
  std::int64_t step = 0;
  std::vector<ActionId> actions;
  nlohmann::json record;  // the full line as written
};

struct Replay {
  std::string engine_version;
  EnvConfig config;
  std::uint64_t seed = 0;
  nlohmann::json header;
  std::vector<ReplayStep> steps;
  nlohmann::json footer;
};

// Throws CorruptReplay on malformed input and VersionMismatch on a foreign engine version.
Replay load_replay(std::istream& in);

struct VerifyResult {
  bool ok = true;
  std::int64_t step = -1;  // -1 for header/footer problems
  std::string field;
  std::string detail;
};

// Re-simulates the replay and stops at the first divergence.
VerifyResult verify_replay(const Replay& replay);
VerifyResult verify_replay(std::istream& in);

}  // namespace coopcraft
