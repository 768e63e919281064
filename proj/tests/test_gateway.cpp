#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "coopcraft/harness/rollout.hpp"
#include "coopcraft/serialize.hpp"
#include "server.hpp"
#include "session.hpp"

using namespace coopcraft;
using namespace coopcraft::gateway;

namespace {

json parse(const Outgoing& m) { return json::parse(m.text); }

std::vector<json> to(const Outbox& out, ConnectionId c) {
  std::vector<json> v;
  for (const auto& m : out) {
    if (m.connection == c) v.push_back(parse(m));
  }
  return v;
}

std::string error_code(const Outbox& out) {
  REQUIRE(out.size() == 1);
  const json j = parse(out[0]);
  REQUIRE(j["type"] == "error");
  return j["code"].get<std::string>();
}

std::string join_msg(const std::string& session, std::optional<int> seat = std::nullopt, std::uint64_t seed = 7) {
  json j = {{"type", "join"}, {"session", session}, {"seed", seed}};
  if (seat) j["seat"] = *seat;
  return j.dump();
}

std::string action_msg(ActionId id) { return json{{"type", "action"}, {"id", id}}.dump(); }

const std::string kStart = R"({"type":"start"})";

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("join replies with hello and state") {
  Hub hub({});
  const auto out = hub.on_message(1, join_msg("s1", 2));
  REQUIRE(out.size() == 2);
  const json hello = parse(out[0]);
  const json state = parse(out[1]);
  CHECK(hello["type"] == "hello");
  CHECK(hello["seat"] == 2);
  CHECK(hello["phase"] == "lobby");
  CHECK(hello["manifests"]["actions"].size() == 65);
  CHECK(state["type"] == "state");
  CHECK(state["step"] == 0);
  CHECK(state["view"]["seat"] == 2);
  CHECK(state["view"]["teammates"].size() == 2);
  CHECK(hub.find("s1")->seed() == 7);
  CHECK(hub.sessions_json().size() == 1);
}

TEST_CASE("protocol errors") {
  Hub hub({});
  CHECK(error_code(hub.on_message(1, "not json")) == "malformed");
  CHECK(error_code(hub.on_message(1, R"({"session":"x"})")) == "malformed");
  CHECK(error_code(hub.on_message(1, R"({"type":"dance"})")) == "malformed");
  CHECK(error_code(hub.on_message(1, action_msg(0))) == "not_joined");
  CHECK(error_code(hub.on_message(1, kStart)) == "not_joined");
  CHECK(error_code(hub.on_message(1, join_msg("s", 3))) == "bad_seat");
  CHECK(error_code(hub.on_message(1, join_msg("s", -1))) == "bad_seat");
  CHECK(error_code(hub.on_message(1, R"({"type":"join"})")) == "malformed");

  REQUIRE(hub.on_message(1, join_msg("s", 0)).size() == 2);
  CHECK(error_code(hub.on_message(2, join_msg("s", 0))) == "seat_taken");
  CHECK(error_code(hub.on_message(1, action_msg(65))) == "bad_action");
  CHECK(error_code(hub.on_message(1, R"({"type":"action","id":"up"})")) == "malformed");
  REQUIRE(hub.on_message(2, join_msg("s")).size() == 2);
  REQUIRE(hub.on_message(3, join_msg("s")).size() == 2);
  CHECK(error_code(hub.on_message(4, join_msg("s"))) == "full_session");

  CHECK(hub.on_message(1, kStart).empty());
  CHECK(error_code(hub.on_message(2, kStart)) == "bad_phase");

  CHECK(error_code(hub.on_message(5, R"({"type":"request_replay","file":"../x.jsonl"})")) == "bad_replay");
  CHECK(error_code(hub.on_message(5, R"({"type":"request_replay","file":"missing.jsonl"})")) == "bad_replay");
  CHECK(error_code(hub.on_message(5, R"({"type":"request_replay","file":"a.jsonl","speed":0})")) == "malformed");
}

TEST_CASE("a teammate's request shows up as a badge on the next tick") {
  Hub hub({});
  hub.on_message(1, join_msg("s", 2));
  hub.on_message(2, join_msg("s", 0));
  hub.on_message(1, kStart);
  hub.on_message(1, action_msg(request_action(TradableResource::Iron)));
  const auto out = hub.tick("s");
  const auto for_miner = to(out, 2);
  REQUIRE(for_miner.size() == 1);
  const json& mates = for_miner[0]["view"]["teammates"];
  REQUIRE(mates.size() == 2);
  CHECK(mates[1]["agent"] == 2);
  CHECK(mates[1]["request"] == std::string(name_of(TradableResource::Iron)));
  CHECK(mates[0]["request"].is_null());
  CHECK(for_miner[0]["view"]["requests"].size() == 1);
  CHECK(for_miner[0]["step"] == 1);
}

TEST_CASE("last action wins and idle humans send NOOP") {
  Hub hub({});
  hub.on_message(1, join_msg("s", 0));
  hub.on_message(2, join_msg("s", 1));
  hub.on_message(1, kStart);
  hub.on_message(1, action_msg(id_of(Action::Up)));
  hub.on_message(1, action_msg(id_of(Action::Down)));
  hub.tick("s");
  hub.tick("s");
  const auto& log = hub.find("s")->action_log();
  REQUIRE(log.size() == 2);
  CHECK(log[0][0] == id_of(Action::Down));
  CHECK(log[0][1] == id_of(Action::Noop));
  CHECK(log[1][0] == id_of(Action::Noop));
}

TEST_CASE("a session replays exactly offline from its action log") {
  Hub hub({});
  hub.on_message(1, join_msg("s", 1, 11));
  hub.on_message(1, kStart);
  RngState rng(5);
  for (int t = 0; t < 200; ++t) {
    hub.on_message(1, action_msg(static_cast<ActionId>(rng.uniform(65))));
    hub.tick("s");
  }
  Session* s = hub.find("s");
  Env env(EnvConfig{});
  env.reset(11);
  for (const auto& actions : s->action_log()) env.step(actions);
  CHECK(state_hash(env.state()) == state_hash(s->state()));
}

TEST_CASE("edits outside every window leave the stream unchanged") {
  auto run = [](bool perturb) {
    Hub hub({});
    hub.on_message(1, join_msg("s", 0, 21));
    Session* s = hub.find("s");
    if (perturb) {
      FloorMap& deep = s->mutable_state().floors[8];
      deep.set({3, 3}, deep.at({3, 3}) == TileKind::Lava ? TileKind::Path : TileKind::Lava);
      MobState m;
      m.kind = MobKind::Zombie;
      m.floor = 8;
      m.pos = {5, 5};
      m.health = 5;
      s->mutable_state().mobs.push_back(m);
    }
    hub.on_message(1, kStart);
    RngState rng(3);
    std::vector<std::string> stream;
    for (int t = 0; t < 60; ++t) {
      hub.on_message(1, action_msg(static_cast<ActionId>(rng.uniform(65))));
      for (const auto& m : hub.tick("s")) stream.push_back(m.text);
    }
    return stream;
  };
  const auto a = run(false);
  const auto b = run(true);
  REQUIRE(a.size() == b.size());
  int differing = 0;
  for (std::size_t i = 0; i < a.size(); ++i) differing += a[i] != b[i];
  CHECK(differing == 0);
}

TEST_CASE("replay streams match a live re-encoding") {
  const auto dir = temp_dir("coopcraft_gateway_replays");
  {
    std::ofstream out(dir / "run.jsonl");
    RolloutOptions o;
    o.policy = "scripted:trio";
    o.seed = 4;
    o.policy_seed = 5;
    o.max_steps = 40;
    o.record = &out;
    run_rollout(o);
  }
  HubOptions options;
  options.replay_dir = dir.string();
  Hub hub(options);
  const auto hello = hub.on_message(9, R"({"type":"request_replay","file":"run.jsonl","seat":1,"speed":1000})");
  REQUIRE(hello.size() == 1);
  CHECK(parse(hello[0])["total_steps"] == 40);

  std::vector<json> states;
  bool done = false;
  for (int i = 0; i < 200 && !done; ++i) {
    for (const auto& m : hub.poll(i * 0.01)) {
      const json j = parse(m);
      if (j["type"] == "state") states.push_back(j);
      done = done || j["type"] == "done";
    }
  }
  CHECK(done);
  REQUIRE(states.size() == 40);

  std::ifstream in(dir / "run.jsonl");
  const Replay replay = load_replay(in);
  Env env(replay.config);
  env.reset(replay.seed);
  for (std::size_t t = 0; t < replay.steps.size(); ++t) {
    const StepResult r = env.step(replay.steps[t].actions);
    const std::size_t stride = env.obs_size();
    const std::span<const float> obs(r.observations.data() + stride, stride);
    const json expected = build_view(env.layout(), env.config(), 1, obs, r.rewards[1], r.info.events);
    CHECK(states[t]["view"] == expected);
    CHECK(states[t]["step"] == t + 1);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("views carry only the seat's own events") {
  Hub hub({});
  hub.on_message(1, join_msg("s", 0));
  Session* s = hub.find("s");
  s->mutable_state().agents[2].inventory[Item::Stone] = 3;
  hub.on_message(1, kStart);
  hub.on_message(1, action_msg(request_action(TradableResource::Stone)));
  for (int t = 0; t < 5; ++t) {
    for (const auto& m : hub.tick("s")) {
      const json j = parse(m);
      if (j["type"] != "state") continue;
      for (const auto& e : j["view"]["events"]) {
        const bool mine = e.value("agent", -1) == 0 || e.value("other", -1) == 0;
        CHECK(mine);
      }
    }
  }
}

namespace {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = boost::asio::ip::tcp;

http::response<http::string_body> http_get(unsigned short port, const std::string& target) {
  boost::asio::io_context ioc;
  tcp::socket socket(ioc);
  socket.connect({boost::asio::ip::make_address("127.0.0.1"), port});
  http::request<http::string_body> req{http::verb::get, target, 11};
  req.set(http::field::host, "localhost");
  http::write(socket, req);
  beast::flat_buffer buffer;
  http::response<http::string_body> res;
  http::read(socket, buffer, res);
  boost::system::error_code ec;
  socket.shutdown(tcp::socket::shutdown_both, ec);
  return res;
}

}  // namespace

TEST_CASE("server: websocket protocol, session listing and static files") {
  const auto dir = temp_dir("coopcraft_gateway_static");
  {
    std::ofstream out(dir / "index.html");
    out << "<html>coopcraft</html>";
  }
  boost::asio::io_context ioc;
  ServerOptions options;
  options.address = "127.0.0.1";
  options.port = 0;
  options.static_dir = dir.string();
  options.hub.tick_rate = 50.0;
  Server server(ioc, options);
  server.start();
  const unsigned short port = server.port();
  REQUIRE(port != 0);
  std::thread io([&ioc] { ioc.run(); });

  {
    boost::asio::io_context client_ioc;
    websocket::stream<tcp::socket> ws(client_ioc);
    ws.next_layer().connect({boost::asio::ip::make_address("127.0.0.1"), port});
    ws.handshake("localhost", "/ws");
    auto send = [&ws](const std::string& text) { ws.write(boost::asio::buffer(text)); };
    auto receive = [&ws] {
      beast::flat_buffer buffer;
      ws.read(buffer);
      return json::parse(beast::buffers_to_string(buffer.data()));
    };
    send(join_msg("live", 1));
    CHECK(receive()["type"] == "hello");
    CHECK(receive()["type"] == "state");

    const auto listing = http_get(port, "/sessions");
    CHECK(listing.result() == http::status::ok);
    const json sessions = json::parse(listing.body());
    REQUIRE(sessions.size() == 1);
    CHECK(sessions[0]["id"] == "live");

    send(kStart);
    send(action_msg(id_of(Action::Left)));
    const json first = receive();
    CHECK(first["type"] == "state");
    CHECK(first["step"] == 1);
    send(R"({"type":"jump"})");
    bool saw_error = false;
    for (int i = 0; i < 20 && !saw_error; ++i) saw_error = receive()["type"] == "error";
    CHECK(saw_error);
    ws.close(websocket::close_code::normal);
  }

  const auto index = http_get(port, "/index.html");
  CHECK(index.result() == http::status::ok);
  CHECK(index.body() == "<html>coopcraft</html>");
  CHECK(http_get(port, "/").body() == "<html>coopcraft</html>");
  CHECK(http_get(port, "/missing.js").result() == http::status::not_found);
  CHECK(http_get(port, "/../etc/passwd").result() != http::status::ok);

  boost::asio::post(ioc, [&server] { server.stop(); });
  io.join();
  std::filesystem::remove_all(dir);
}
