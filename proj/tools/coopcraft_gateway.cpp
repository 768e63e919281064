// coopcraft-gateway: live play over websocket.
//
//   coopcraft-gateway --port 8080 --static web/dist --replays replays/ --tick-rate 5

#include <csignal>
#include <iostream>

#include <boost/asio.hpp>

#include <CLI11.hpp>

#include "coopcraft/config_io.hpp"
#include "server.hpp"

using namespace coopcraft;

int main(int argc, char** argv) {
  CLI::App app{"coopcraft websocket gateway"};
  gateway::ServerOptions options;
  std::string config_file;
  app.add_option("--port", options.port, "listen port (0 picks one)");
  app.add_option("--address", options.address, "listen address");
  app.add_option("--static", options.static_dir, "directory with the browser client");
  app.add_option("--replays", options.hub.replay_dir, "directory replays are streamed from");
  app.add_option("--tick-rate", options.hub.tick_rate, "simulation steps per second")->check(CLI::Range(0.1, 1000.0));
  app.add_option("--seed", options.hub.seed, "seed for new sessions");
  app.add_option("--config", config_file, "key=value config for new sessions");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (!config_file.empty()) options.hub.config = load_config_file(config_file);
    boost::asio::io_context ioc;
    gateway::Server server(ioc, options);
    server.start();
    boost::asio::signal_set signals(ioc, SIGINT, SIGTERM);
    signals.async_wait([&](const boost::system::error_code&, int) { server.stop(); });
    std::cout << "listening on " << options.address << ':' << server.port() << std::endl;
    ioc.run();
  } catch (const InvalidConfig& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "gateway: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
