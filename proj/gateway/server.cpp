#include "server.hpp"

#include <chrono>
#include <deque>
#include <filesystem>
#include <iostream>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

namespace coopcraft::gateway {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

namespace {

constexpr auto kPollInterval = std::chrono::milliseconds(10);

const char* mime_type(std::string_view path) {
  const auto dot = path.rfind('.');
  const std::string_view ext = dot == std::string_view::npos ? "" : path.substr(dot);
  if (ext == ".html") return "text/html";
  if (ext == ".js" || ext == ".mjs") return "application/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  if (ext == ".wasm") return "application/wasm";
  return "application/octet-stream";
}

}  // namespace

class WsConnection;

struct Server::Impl : std::enable_shared_from_this<Server::Impl> {
  Impl(net::io_context& ioc, ServerOptions opts)
      : ioc(ioc), acceptor(ioc), timer(ioc), options(std::move(opts)), hub(options.hub) {
    const tcp::endpoint endpoint(net::ip::make_address(options.address), options.port);
    acceptor.open(endpoint.protocol());
    acceptor.set_option(net::socket_base::reuse_address(true));
    acceptor.bind(endpoint);
    acceptor.listen(net::socket_base::max_listen_connections);
  }

  void accept();
  void schedule_poll();
  void deliver(Outbox out);
  double now() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - epoch).count();
  }

  net::io_context& ioc;
  tcp::acceptor acceptor;
  net::steady_timer timer;
  ServerOptions options;
  Hub hub;
  std::map<ConnectionId, std::weak_ptr<WsConnection>> connections;
  ConnectionId next_id = 1;
  bool stopped = false;
  std::chrono::steady_clock::time_point epoch = std::chrono::steady_clock::now();
};

class WsConnection : public std::enable_shared_from_this<WsConnection> {
 public:
  WsConnection(tcp::socket socket, std::shared_ptr<Server::Impl> server)
      : ws_(std::move(socket)), server_(std::move(server)), id_(server_->next_id++) {}

  void accept(http::request<http::string_body> req) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
      if (ec) return;
      self->server_->connections[self->id_] = self;
      self->read();
    });
  }

  void send(std::string text) {
    queue_.push_back(std::move(text));
    if (queue_.size() == 1) write();
  }

  void close() {
    ws_.async_close(websocket::close_code::going_away, [self = shared_from_this()](beast::error_code) {});
  }

 private:
  void read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->server_->connections.erase(self->id_);
        self->server_->deliver(self->server_->hub.on_disconnect(self->id_));
        return;
      }
      const std::string text = beast::buffers_to_string(self->buffer_.data());
      self->buffer_.consume(self->buffer_.size());
      self->server_->deliver(self->server_->hub.on_message(self->id_, text));
      self->read();
    });
  }

  void write() {
    ws_.text(true);
    ws_.async_write(net::buffer(queue_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return;
      self->queue_.pop_front();
      if (!self->queue_.empty()) self->write();
    });
  }

  websocket::stream<beast::tcp_stream> ws_;
  std::shared_ptr<Server::Impl> server_;
  ConnectionId id_;
  beast::flat_buffer buffer_;
  std::deque<std::string> queue_;
};

class HttpConnection : public std::enable_shared_from_this<HttpConnection> {
 public:
  HttpConnection(tcp::socket socket, std::shared_ptr<Server::Impl> server)
      : stream_(std::move(socket)), server_(std::move(server)) {}

  void read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, req_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return;
      self->handle();
    });
  }

 private:
  void handle() {
    const std::string target(req_.target());
    const std::string path = target.substr(0, target.find('?'));
    if (websocket::is_upgrade(req_)) {
      if (path != "/ws") return respond(status(http::status::not_found, "no websocket endpoint here\n"));
      stream_.expires_never();
      std::make_shared<WsConnection>(stream_.release_socket(), server_)->accept(std::move(req_));
      return;
    }
    if (req_.method() != http::verb::get && req_.method() != http::verb::head) {
      return respond(status(http::status::method_not_allowed, "GET only\n"));
    }
    if (path == "/sessions") {
      auto res = status(http::status::ok, server_->hub.sessions_json().dump());
      res.set(http::field::content_type, "application/json");
      return respond(std::move(res));
    }
    serve_file(path);
  }

  http::response<http::string_body> status(http::status code, std::string body) {
    http::response<http::string_body> res{code, req_.version()};
    res.set(http::field::server, "coopcraft-gateway");
    res.set(http::field::content_type, "text/plain");
    res.keep_alive(req_.keep_alive());
    res.body() = std::move(body);
    res.prepare_payload();
    return res;
  }

  void serve_file(const std::string& path) {
    const std::string& root = server_->options.static_dir;
    if (root.empty() || path.empty() || path.front() != '/' || path.find("..") != std::string::npos) {
      return respond(status(http::status::not_found, "not found\n"));
    }
    std::filesystem::path file = std::filesystem::path(root) / path.substr(1);
    if (path.back() == '/') file /= "index.html";
    beast::error_code ec;
    http::file_body::value_type body;
    body.open(file.string().c_str(), beast::file_mode::scan, ec);
    if (ec) return respond(status(http::status::not_found, "not found\n"));
    const auto size = body.size();
    http::response<http::file_body> res{std::piecewise_construct, std::make_tuple(std::move(body)),
                                        std::make_tuple(http::status::ok, req_.version())};
    res.set(http::field::server, "coopcraft-gateway");
    res.set(http::field::content_type, mime_type(file.string()));
    res.content_length(size);
    res.keep_alive(req_.keep_alive());
    if (req_.method() == http::verb::head) {
      auto head = status(http::status::ok, "");
      head.set(http::field::content_type, mime_type(file.string()));
      head.content_length(size);
      return respond(std::move(head));
    }
    respond(std::move(res));
  }

  template <typename Body>
  void respond(http::response<Body> res) {
    auto owned = std::make_shared<http::response<Body>>(std::move(res));
    http::async_write(stream_, *owned, [self = shared_from_this(), owned](beast::error_code ec, std::size_t) {
      if (ec) return;
      if (!owned->keep_alive()) {
        beast::error_code ignored;
        self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
        return;
      }
      self->read();
    });
  }

  beast::tcp_stream stream_;
  std::shared_ptr<Server::Impl> server_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
};

void Server::Impl::accept() {
  acceptor.async_accept([self = shared_from_this()](beast::error_code ec, tcp::socket socket) {
    if (self->stopped) return;
    if (!ec) std::make_shared<HttpConnection>(std::move(socket), self)->read();
    self->accept();
  });
}

void Server::Impl::schedule_poll() {
  timer.expires_after(kPollInterval);
  timer.async_wait([self = shared_from_this()](beast::error_code ec) {
    if (ec || self->stopped) return;
    self->deliver(self->hub.poll(self->now()));
    self->schedule_poll();
  });
}

void Server::Impl::deliver(Outbox out) {
  for (auto& m : out) {
    const auto it = connections.find(m.connection);
    if (it == connections.end()) continue;
    if (auto conn = it->second.lock()) conn->send(std::move(m.text));
  }
}

Server::Server(net::io_context& ioc, ServerOptions options)
    : impl_(std::make_shared<Impl>(ioc, std::move(options))) {}

Server::~Server() = default;

void Server::start() {
  impl_->accept();
  impl_->schedule_poll();
}

void Server::stop() {
  net::post(impl_->ioc, [impl = impl_] {
    impl->stopped = true;
    beast::error_code ignored;
    impl->acceptor.close(ignored);
    impl->timer.cancel();
    for (auto& [id, weak] : impl->connections) {
      if (auto conn = weak.lock()) conn->close();
    }
  });
}

unsigned short Server::port() const { return impl_->acceptor.local_endpoint().port(); }

Hub& Server::hub() { return impl_->hub; }

}  // namespace coopcraft::gateway
