#pragma once

#include <memory>
#include <string>

#include "session.hpp"

namespace boost::asio {
class io_context;
}

namespace coopcraft::gateway {

struct ServerOptions {
  std::string address = "0.0.0.0";
  unsigned short port = 8080;  // 0 picks a free port
  std::string static_dir;      // client bundle; empty disables static files
  HubOptions hub;
};

// HTTP and websocket on one port, all I/O on the io_context's thread:
//   GET /ws        websocket upgrade, JSON protocol (see Hub)
//   GET /sessions  JSON list of sessions
//   GET /<path>    static file from static_dir
class Server {
 public:
  Server(boost::asio::io_context& ioc, ServerOptions options);
  ~Server();

  // Starts accepting and ticking; returns immediately.
  void start();
  void stop();

  unsigned short port() const;
  Hub& hub();

  struct Impl;  // defined in server.cpp

 private:
  std::shared_ptr<Impl> impl_;
};

}  // namespace coopcraft::gateway
