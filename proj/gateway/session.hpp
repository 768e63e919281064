#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "coopcraft/env.hpp"
#include "coopcraft/harness/policy.hpp"
#include "coopcraft/harness/replay.hpp"

namespace coopcraft::gateway {

using nlohmann::json;

using ConnectionId = std::uint64_t;

enum class Phase { Lobby, Running, Finished };
std::string_view name_of(Phase p);

// A text frame addressed to one connection.
struct Outgoing {
  ConnectionId connection;
  std::string text;
};
using Outbox = std::vector<Outgoing>;

// Decodes one seat's observation into named fields plus a tile window. Only
// the observation, the seat's own reward and the events naming the seat are
// used, so nothing outside the seat's view reaches the wire.
json build_view(const ObsLayout& layout, const EnvConfig& config, int seat, std::span<const float> obs,
                float reward, std::span<const Event> events);

// Summary for one seat at the end of an episode.
struct SeatSummary {
  std::int64_t steps = 0;
  double reward = 0.0;
  double achievement_reward = 0.0;
  std::vector<std::string> achievements;
  int trades_given = 0;
  int trades_received = 0;
  int deaths = 0;
  int revives_given = 0;
  int revived = 0;

  void add(int seat, const StepResult& result);
  json to_json(const EnvConfig& config, bool done, bool truncated) const;
};

// One live episode: seats held by humans or bots, one simulation step per tick.
class Session {
 public:
  Session(std::string id, EnvConfig config, std::uint64_t seed, std::uint64_t policy_seed = 0);

  const std::string& id() const { return id_; }
  const EnvConfig& config() const { return env_.config(); }
  Phase phase() const { return phase_; }
  std::int64_t step() const { return step_; }
  const WorldState& state() const { return env_.state(); }
  WorldState& mutable_state() { return env_.mutable_state(); }
  std::uint64_t seed() const { return seed_; }

  // Seat held by `connection`, or -1.
  int seat_of(ConnectionId connection) const;
  bool human(int seat) const { return seats_[static_cast<std::size_t>(seat)].has_value(); }
  int humans() const;
  int free_seat() const;  // lowest bot seat, -1 when every seat is human

  void seat(int seat, ConnectionId connection) { seats_[static_cast<std::size_t>(seat)] = connection; }
  void release(ConnectionId connection);
  // Last write wins until the next tick.
  void submit(int seat, ActionId action) { pending_[static_cast<std::size_t>(seat)] = action; }
  void start() { phase_ = Phase::Running; }

  // Advances one step when running; returns the per-seat state (and done) messages.
  Outbox tick();

  // Messages describing the current step for one seat (sent on join).
  std::string state_message(int seat) const;
  std::string hello_message(int seat) const;

  // Per-tick action sets in order, human NOOPs and bot choices included.
  const std::vector<std::vector<ActionId>>& action_log() const { return log_; }
  json listing() const;

 private:
  std::string id_;
  std::uint64_t seed_;
  std::uint64_t policy_seed_;
  Env env_;
  Phase phase_ = Phase::Lobby;
  std::int64_t step_ = 0;
  std::vector<std::optional<ConnectionId>> seats_;
  std::vector<std::optional<ActionId>> pending_;
  std::vector<std::unique_ptr<Controller>> bots_;
  std::vector<float> obs_;
  StepResult last_;
  std::vector<SeatSummary> summaries_;
  std::vector<std::vector<ActionId>> log_;
};

// Streams a recorded replay to one connection, re-simulated step by step.
class ReplayStream {
 public:
  ReplayStream(ConnectionId connection, Replay replay, int seat, double speed);

  ConnectionId connection() const { return connection_; }
  double speed() const { return speed_; }
  void set_speed(double speed) { speed_ = speed; }
  bool finished() const { return next_ >= replay_.steps.size(); }

  // Next state message (and the done message after the last step).
  Outbox advance();

 private:
  ConnectionId connection_;
  Replay replay_;
  int seat_;
  double speed_;
  Env env_;
  std::size_t next_ = 0;
  SeatSummary summary_;
};

struct HubOptions {
  EnvConfig config;
  std::uint64_t seed = 0;
  double tick_rate = 5.0;  // steps per second
  std::string replay_dir = ".";
};

// Protocol front end, independent of any transport. The server feeds it
// frames and clock readings and delivers whatever it returns.
//
// client -> server
//   {"type":"join", "session":"s1", "seat":2}      seat optional; "seed" optional for a new session
//   {"type":"action", "id":5}
//   {"type":"start"}
//   {"type":"request_replay", "file":"run.jsonl", "seat":0, "speed":10}
// server -> client
//   {"type":"hello", "session", "seat", "phase", "manifests"}
//   {"type":"state", "session", "step", "view"}
//   {"type":"done", "summary"}
//   {"type":"error", "code", "message"}
class Hub {
 public:
  explicit Hub(HubOptions options);

  Outbox on_message(ConnectionId connection, std::string_view text);
  Outbox on_disconnect(ConnectionId connection);

  // Runs every tick that is due at `now` (seconds on any monotonic clock).
  Outbox poll(double now);
  // One step of one running session, ignoring the clock.
  Outbox tick(const std::string& session);

  json sessions_json() const;
  Session* find(const std::string& id);
  const HubOptions& options() const { return options_; }

 private:
  Outbox join(ConnectionId connection, const json& msg);
  Outbox replay(ConnectionId connection, const json& msg);
  Session* session_of(ConnectionId connection, int* seat);

  struct Live {
    std::unique_ptr<Session> session;
    double next_tick = -1.0;
  };
  struct Stream {
    std::unique_ptr<ReplayStream> stream;
    double next_tick = -1.0;
  };

  HubOptions options_;
  std::map<std::string, Live> sessions_;
  std::map<ConnectionId, std::string> membership_;
  std::map<ConnectionId, Stream> replays_;
};

std::string error_message(std::string_view code, std::string_view message);

}  // namespace coopcraft::gateway
