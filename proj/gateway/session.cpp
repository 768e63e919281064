#include "session.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "coopcraft/harness/manifest.hpp"

namespace coopcraft::gateway {

namespace {

constexpr std::size_t kMaxSessionId = 64;
constexpr int kMaxCatchUpTicks = 5;

int decode(float v, float scale) { return static_cast<int>(std::lround(v * scale)); }

int meter_cap_for(const EnvConfig& config, std::optional<Specialization> spec) {
  return spec == Specialization::Forager ? config.survival.forager_meter_cap : config.survival.meter_cap;
}

// Index of the hot channel in a one-hot block, or -1.
int hot(std::span<const float> block) {
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (block[i] > 0.5f) return static_cast<int>(i);
  }
  return -1;
}

json message(std::string_view type) { return {{"type", type}}; }

}  // namespace

std::string_view name_of(Phase p) {
  switch (p) {
    case Phase::Lobby: return "lobby";
    case Phase::Running: return "running";
    case Phase::Finished: return "finished";
  }
  return "unknown";
}

std::string error_message(std::string_view code, std::string_view text) {
  json m = message("error");
  m["code"] = code;
  m["message"] = text;
  return m.dump();
}

json build_view(const ObsLayout& layout, const EnvConfig& config, int seat, std::span<const float> obs, float reward,
                std::span<const Event> events) {
  const auto& off = layout.offsets();
  const int h = layout.window_height();
  const int w = layout.window_width();
  auto block = [&obs](std::size_t at, std::size_t n) { return obs.subspan(at, n); };

  std::optional<Specialization> spec;
  if (layout.coop()) {
    const int s = hot(block(off.specialization, kNumSpecializations));
    if (s >= 0) spec = static_cast<Specialization>(s);
  }

  json tiles = json::array();
  json mobs = json::array();
  json items = json::array();
  static constexpr std::array<std::string_view, kItemMapChannels> kItemNames = {"torch", "ladder_down", "ladder_up"};
  for (int r = 0; r < h; ++r) {
    json row = json::array();
    for (int c = 0; c < w; ++c) {
      const auto cell = static_cast<std::size_t>(r * w + c);
      const int t = hot(block(off.tiles + cell * kTileChannels, kTileChannels));
      row.push_back(t == kDarkChannel || t < 0 ? std::string_view("dark") : kTileNames[static_cast<std::size_t>(t)]);
      const int m = hot(block(off.mobs + cell * kNumMobKinds, kNumMobKinds));
      if (m >= 0) mobs.push_back({{"row", r}, {"col", c}, {"kind", kMobNames[static_cast<std::size_t>(m)]}});
      for (int i = 0; i < kItemMapChannels; ++i) {
        if (obs[off.items + cell * kItemMapChannels + static_cast<std::size_t>(i)] > 0.5f) {
          items.push_back({{"row", r}, {"col", c}, {"kind", kItemNames[static_cast<std::size_t>(i)]}});
        }
      }
    }
    tiles.push_back(std::move(row));
  }

  json inventory = json::object();
  const auto& features = inventory_features();
  for (std::size_t i = 0; i < features.size(); ++i) {
    inventory[features[i].name] = decode(obs[off.inventory + i], features[i].cap);
  }

  const float cap = static_cast<float>(meter_cap_for(config, spec));
  const json meters = {{"health", decode(obs[off.meters + 0], layout.max_health())},
                       {"food", decode(obs[off.meters + 1], cap)},
                       {"water", decode(obs[off.meters + 2], cap)},
                       {"energy", decode(obs[off.meters + 3], layout.max_energy())}};

  static constexpr std::array<std::string_view, kBearingChannels> kBearings = {
      "n", "ne", "e", "se", "s", "sw", "w", "nw", "none", "below", "above"};
  json teammates = json::array();
  json requests = json::array();
  json window_mates = json::array();
  std::size_t base = off.teammates;
  for (int k = 0; k + 1 < layout.n_agents(); ++k, base += off.teammate_stride) {
    const int agent = k < seat ? k : k + 1;
    json mate = {{"agent", agent},
                 {"health", decode(obs[base + off.tm_health], layout.max_health())},
                 {"alive", obs[base + off.tm_alive] > 0.5f}};
    const int bearing = hot(block(base + off.tm_bearing, kBearingChannels));
    mate["bearing"] = bearing >= 0 ? kBearings[static_cast<std::size_t>(bearing)] : std::string_view("none");
    for (int cell = 0; cell < h * w; ++cell) {
      if (obs[base + off.tm_position + static_cast<std::size_t>(cell)] > 0.5f) {
        window_mates.push_back({{"row", cell / w}, {"col", cell % w}, {"agent", agent}});
        mate["visible"] = true;
      }
    }
    if (!mate.contains("visible")) mate["visible"] = false;
    if (layout.coop()) {
      const int s = hot(block(base + off.tm_specialization, kNumSpecializations));
      mate["specialization"] = s >= 0 ? name_of(static_cast<Specialization>(s)) : std::string_view("none");
      const int r = hot(block(base + off.tm_request, kRequestChannels));
      if (r >= 0 && r < kNumTradableResources) {
        const auto resource = name_of(static_cast<TradableResource>(r));
        mate["request"] = resource;
        requests.push_back({{"agent", agent}, {"resource", resource}});
      } else {
        mate["request"] = nullptr;
      }
    }
    teammates.push_back(std::move(mate));
  }

  json own_events = json::array();
  for (const auto& e : events) {
    if (e.agent == seat || e.other == seat) own_events.push_back(event_json(e));
  }

  const int facing = hot(block(off.facing, kNumDirections));
  const int floor = hot(block(off.floor, static_cast<std::size_t>(layout.n_floors())));
  return {{"seat", seat},
          {"specialization", spec ? name_of(*spec) : std::string_view("none")},
          {"floor", floor},
          {"facing", facing >= 0 ? name_of(static_cast<Direction>(facing)) : std::string_view("down")},
          {"light", obs[off.light]},
          {"sleeping", obs[off.sleeping] > 0.5f},
          {"alive", meters["health"].get<int>() > 0},
          {"meters", meters},
          {"inventory", inventory},
          {"window", {{"height", h}, {"width", w}, {"tiles", tiles}, {"mobs", mobs}, {"items", items},
                      {"teammates", window_mates}}},
          {"teammates", teammates},
          {"requests", requests},
          {"events", own_events},
          {"reward", reward}};
}

void SeatSummary::add(int seat, const StepResult& result) {
  ++steps;
  const auto s = static_cast<std::size_t>(seat);
  reward += result.rewards[s];
  achievement_reward += result.info.achievement_rewards[s];
  for (const auto& c : result.info.completions) {
    if (c.agent == seat) achievements.emplace_back(name_of(c.achievement));
  }
  for (const auto& e : result.info.events) {
    switch (e.kind) {
      case EventKind::Trade:
        if (e.agent == seat) ++trades_given;
        if (e.other == seat) ++trades_received;
        break;
      case EventKind::Death:
        if (e.agent == seat) ++deaths;
        break;
      case EventKind::Revive:
        if (e.agent == seat) ++revives_given;
        if (e.other == seat) ++revived;
        break;
      default: break;
    }
  }
}

json SeatSummary::to_json(const EnvConfig& config, bool done, bool truncated) const {
  const double max = max_total(config);
  return {{"steps", steps},
          {"done", done},
          {"truncated", truncated},
          {"return", reward},
          {"achievement_return", achievement_reward},
          {"max_total", max},
          {"percent_of_max", max > 0.0 ? 100.0 * achievement_reward / max : 0.0},
          {"achievements", achievements},
          {"trades_given", trades_given},
          {"trades_received", trades_received},
          {"deaths", deaths},
          {"revives_given", revives_given},
          {"revived", revived}};
}

Session::Session(std::string id, EnvConfig config, std::uint64_t seed, std::uint64_t policy_seed)
    : id_(std::move(id)), seed_(seed), policy_seed_(policy_seed), env_(std::move(config)) {
  obs_ = env_.reset(seed);
  const auto n = static_cast<std::size_t>(env_.n_agents());
  seats_.resize(n);
  pending_.resize(n);
  summaries_.resize(n);
  for (int i = 0; i < env_.n_agents(); ++i) bots_.push_back(role_bot(env_.state(), i));
}

int Session::seat_of(ConnectionId connection) const {
  for (std::size_t i = 0; i < seats_.size(); ++i) {
    if (seats_[i] == connection) return static_cast<int>(i);
  }
  return -1;
}

int Session::humans() const {
  int n = 0;
  for (const auto& s : seats_) n += s.has_value();
  return n;
}

int Session::free_seat() const {
  for (std::size_t i = 0; i < seats_.size(); ++i) {
    if (!seats_[i]) return static_cast<int>(i);
  }
  return -1;
}

void Session::release(ConnectionId connection) {
  const int s = seat_of(connection);
  if (s < 0) return;
  seats_[static_cast<std::size_t>(s)].reset();
  pending_[static_cast<std::size_t>(s)].reset();
}

Outbox Session::tick() {
  if (phase_ != Phase::Running) return {};
  const int n = env_.n_agents();
  std::vector<ActionId> actions(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto s = static_cast<std::size_t>(i);
    if (seats_[s]) {
      actions[s] = pending_[s].value_or(id_of(Action::Noop));
    } else {
      RngState rng = policy_rng(policy_seed_, env_.state().time, i);
      actions[s] = bots_[s]->act(env_.state(), env_.config(), i, rng);
    }
    pending_[s].reset();
  }
  last_ = env_.step(actions);
  obs_ = last_.observations;
  ++step_;
  log_.push_back(actions);
  for (int i = 0; i < n; ++i) summaries_[static_cast<std::size_t>(i)].add(i, last_);

  Outbox out;
  for (int i = 0; i < n; ++i) {
    if (const auto& c = seats_[static_cast<std::size_t>(i)]) out.push_back({*c, state_message(i)});
  }
  if (last_.done) {
    phase_ = Phase::Finished;
    for (int i = 0; i < n; ++i) {
      if (const auto& c = seats_[static_cast<std::size_t>(i)]) {
        json done = message("done");
        done["session"] = id_;
        done["summary"] = summaries_[static_cast<std::size_t>(i)].to_json(config(), last_.done, last_.truncated);
        out.push_back({*c, done.dump()});
      }
    }
  }
  return out;
}

std::string Session::state_message(int seat) const {
  const std::size_t stride = env_.obs_size();
  const std::span<const float> obs(obs_.data() + static_cast<std::size_t>(seat) * stride, stride);
  const float reward = last_.rewards.empty() ? 0.0f : last_.rewards[static_cast<std::size_t>(seat)];
  json m = message("state");
  m["session"] = id_;
  m["step"] = step_;
  m["view"] = build_view(env_.layout(), config(), seat, obs, reward, last_.info.events);
  return m.dump();
}

std::string Session::hello_message(int seat) const {
  json m = message("hello");
  m["session"] = id_;
  m["seat"] = seat;
  m["phase"] = name_of(phase_);
  m["variant"] = name_of(config().variant);
  m["n_agents"] = config().n_agents;
  m["manifests"] = manifests_json(config());
  return m.dump();
}

json Session::listing() const {
  json seats = json::array();
  for (const auto& s : seats_) seats.push_back(s ? "human" : "bot");
  return {{"id", id_},
          {"phase", name_of(phase_)},
          {"step", step_},
          {"variant", name_of(config().variant)},
          {"n_agents", config().n_agents},
          {"seats", seats}};
}

ReplayStream::ReplayStream(ConnectionId connection, Replay replay, int seat, double speed)
    : connection_(connection), replay_(std::move(replay)), seat_(seat), speed_(speed), env_(replay_.config) {
  env_.reset(replay_.seed);
}

Outbox ReplayStream::advance() {
  if (finished()) return {};
  const ReplayStep& s = replay_.steps[next_];
  StepResult result;
  try {
    result = env_.step(s.actions);
  } catch (const std::exception& e) {
    next_ = replay_.steps.size();
    return {{connection_, error_message("bad_replay", e.what())}};
  }
  ++next_;
  summary_.add(seat_, result);
  const std::size_t stride = env_.obs_size();
  const std::span<const float> obs(result.observations.data() + static_cast<std::size_t>(seat_) * stride, stride);
  json m = message("state");
  m["replay"] = true;
  m["step"] = next_;
  m["total_steps"] = replay_.steps.size();
  m["view"] = build_view(env_.layout(), env_.config(), seat_, obs, result.rewards[static_cast<std::size_t>(seat_)],
                         result.info.events);
  Outbox out{{connection_, m.dump()}};
  if (finished()) {
    json done = message("done");
    done["replay"] = true;
    done["summary"] = summary_.to_json(env_.config(), result.done, result.truncated);
    out.push_back({connection_, done.dump()});
  }
  return out;
}

Hub::Hub(HubOptions options) : options_(std::move(options)) { options_.config.validate(); }

Session* Hub::find(const std::string& id) {
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second.session.get();
}

Session* Hub::session_of(ConnectionId connection, int* seat) {
  const auto it = membership_.find(connection);
  if (it == membership_.end()) return nullptr;
  Session* s = find(it->second);
  if (s != nullptr && seat != nullptr) *seat = s->seat_of(connection);
  return s;
}

Outbox Hub::on_message(ConnectionId connection, std::string_view text) {
  auto error = [connection](std::string_view code, std::string_view detail) {
    return Outbox{{connection, error_message(code, detail)}};
  };
  json msg;
  try {
    msg = json::parse(text);
  } catch (const json::parse_error&) {
    return error("malformed", "message is not valid JSON");
  }
  if (!msg.is_object() || !msg.contains("type") || !msg["type"].is_string()) {
    return error("malformed", "message needs a string 'type'");
  }
  const std::string type = msg["type"].get<std::string>();
  if (type == "join") return join(connection, msg);
  if (type == "request_replay") return replay(connection, msg);
  if (type != "action" && type != "start") return error("malformed", "unknown message type '" + type + "'");

  int seat = -1;
  Session* session = session_of(connection, &seat);
  if (session == nullptr || seat < 0) return error("not_joined", "join a session first");
  if (type == "start") {
    if (session->phase() != Phase::Lobby) return error("bad_phase", "session already started");
    session->start();
    return {};
  }
  if (!msg.contains("id") || !msg["id"].is_number_integer()) return error("malformed", "action needs an integer 'id'");
  const auto id = msg["id"].get<std::int64_t>();
  if (id < 0 || id >= session->config().num_actions()) return error("bad_action", "action id out of range");
  if (session->phase() == Phase::Finished) return error("bad_phase", "episode is over");
  session->submit(seat, static_cast<ActionId>(id));
  return {};
}

Outbox Hub::join(ConnectionId connection, const json& msg) {
  auto error = [connection](std::string_view code, std::string_view detail) {
    return Outbox{{connection, error_message(code, detail)}};
  };
  if (!msg.contains("session") || !msg["session"].is_string()) return error("malformed", "join needs a string 'session'");
  const std::string id = msg["session"].get<std::string>();
  if (id.empty() || id.size() > kMaxSessionId) return error("malformed", "session id must be 1 to 64 characters");
  if (msg.contains("seed") && !msg["seed"].is_number_unsigned()) return error("malformed", "seed must be unsigned");

  Session* session = find(id);
  std::optional<int> requested;
  if (msg.contains("seat") && !msg["seat"].is_null()) {
    if (!msg["seat"].is_number_integer()) return error("bad_seat", "seat must be an integer");
    requested = msg["seat"].get<int>();
  }
  const int n_agents = session ? session->config().n_agents : options_.config.n_agents;
  if (requested && (*requested < 0 || *requested >= n_agents)) return error("bad_seat", "no such seat");
  if (session != nullptr) {
    if (session->phase() == Phase::Finished) return error("bad_phase", "episode is over");
    const int holder = session->seat_of(connection);
    if (requested && session->human(*requested) && holder != *requested) return error("seat_taken", "seat is taken");
    if (!requested && holder < 0 && session->free_seat() < 0) return error("full_session", "every seat is taken");
  }

  if (const auto it = membership_.find(connection); it != membership_.end() && it->second != id) {
    on_disconnect(connection);
  }
  if (session == nullptr) {
    const std::uint64_t seed = msg.contains("seed") ? msg["seed"].get<std::uint64_t>() : options_.seed;
    auto created = std::make_unique<Session>(id, options_.config, seed);
    session = created.get();
    sessions_[id].session = std::move(created);
  }
  session->release(connection);
  const int seat = requested ? *requested : session->free_seat();
  session->seat(seat, connection);
  membership_[connection] = id;
  return {{connection, session->hello_message(seat)}, {connection, session->state_message(seat)}};
}

Outbox Hub::replay(ConnectionId connection, const json& msg) {
  auto error = [connection](std::string_view code, std::string_view detail) {
    return Outbox{{connection, error_message(code, detail)}};
  };
  if (!msg.contains("file") || !msg["file"].is_string()) return error("malformed", "request_replay needs 'file'");
  const std::string file = msg["file"].get<std::string>();
  if (file.empty() || file.find('/') != std::string::npos || file.find('\\') != std::string::npos ||
      file.find("..") != std::string::npos) {
    return error("bad_replay", "replay name must be a plain file name");
  }
  double speed = options_.tick_rate;
  if (msg.contains("speed")) {
    if (!msg["speed"].is_number() || !(msg["speed"].get<double>() > 0.0) || msg["speed"].get<double>() > 1000.0) {
      return error("malformed", "speed must be in (0, 1000] steps per second");
    }
    speed = msg["speed"].get<double>();
  }
  std::ifstream in(std::filesystem::path(options_.replay_dir) / file);
  if (!in) return error("bad_replay", "no replay named " + file);
  Replay loaded;
  try {
    loaded = load_replay(in);
  } catch (const std::exception& e) {
    return error("bad_replay", e.what());
  }
  int seat = 0;
  if (msg.contains("seat")) {
    if (!msg["seat"].is_number_integer()) return error("bad_seat", "seat must be an integer");
    seat = msg["seat"].get<int>();
  }
  if (seat < 0 || seat >= loaded.config.n_agents) return error("bad_seat", "no such seat");

  json hello = message("hello");
  hello["replay"] = file;
  hello["seat"] = seat;
  hello["total_steps"] = loaded.steps.size();
  hello["variant"] = name_of(loaded.config.variant);
  hello["n_agents"] = loaded.config.n_agents;
  hello["manifests"] = manifests_json(loaded.config);
  replays_[connection] = {std::make_unique<ReplayStream>(connection, std::move(loaded), seat, speed), -1.0};
  return {{connection, hello.dump()}};
}

Outbox Hub::on_disconnect(ConnectionId connection) {
  replays_.erase(connection);
  const auto it = membership_.find(connection);
  if (it == membership_.end()) return {};
  const std::string id = it->second;
  membership_.erase(it);
  if (Session* s = find(id)) {
    s->release(connection);
    if (s->humans() == 0) sessions_.erase(id);
  }
  return {};
}

Outbox Hub::tick(const std::string& session) {
  Session* s = find(session);
  return s ? s->tick() : Outbox{};
}

Outbox Hub::poll(double now) {
  Outbox out;
  auto drain = [&out](Outbox more) {
    for (auto& m : more) out.push_back(std::move(m));
  };
  const double period = 1.0 / options_.tick_rate;
  for (auto& [id, live] : sessions_) {
    if (live.session->phase() != Phase::Running) continue;
    if (live.next_tick < 0.0) live.next_tick = now;
    int ticks = 0;
    while (live.next_tick <= now && live.session->phase() == Phase::Running) {
      drain(live.session->tick());
      live.next_tick += period;
      if (++ticks == kMaxCatchUpTicks) {
        live.next_tick = now + period;
        break;
      }
    }
  }
  for (auto it = replays_.begin(); it != replays_.end();) {
    Stream& s = it->second;
    if (s.next_tick < 0.0) s.next_tick = now;
    int ticks = 0;
    while (s.next_tick <= now && !s.stream->finished()) {
      drain(s.stream->advance());
      s.next_tick += 1.0 / s.stream->speed();
      if (++ticks == kMaxCatchUpTicks) {
        s.next_tick = now + 1.0 / s.stream->speed();
        break;
      }
    }
    it = s.stream->finished() ? replays_.erase(it) : std::next(it);
  }
  return out;
}

json Hub::sessions_json() const {
  json out = json::array();
  for (const auto& [id, live] : sessions_) out.push_back(live.session->listing());
  return out;
}

}  // namespace coopcraft::gateway
