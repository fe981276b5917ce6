#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "quickpie/engine.hpp"
#include "quickpie/serialization.hpp"
#include "quickpie/trace.hpp"

namespace quickpie {

inline constexpr int kProtocolVersion = 1;

/// Server side of one client connection, independent of the transport.
///
/// Every input line is one JSON object with a "type"; every output line is
/// one JSON object with a "type". The protocol is documented in
/// docs/protocol.md. Times passed as `now_ms` are the caller's monotonic
/// clock and only pace trace replay.
class Session {
 public:
  Session();

  /// Handles one message and returns the reply lines (never empty).
  std::vector<std::string> handle_line(std::string_view line, double now_ms);

  /// When the next replayed sample is due, if a replay is playing.
  std::optional<double> next_replay_due_ms() const;
  /// Feeds every replay sample due by `now_ms`; returns the resulting lines.
  std::vector<std::string> pump_replay(double now_ms);

  /// Set after a fatal protocol error; the transport should close.
  bool closed() const { return closed_; }
  const Engine& engine() const { return engine_; }

 private:
  std::vector<std::string> on_hello(const json& msg);
  std::vector<std::string> on_configure(const json& msg);
  std::vector<std::string> on_gaze(const json& msg);
  std::vector<std::string> on_load_trace(const json& msg);
  std::vector<std::string> on_replay_control(const json& msg, double now_ms);
  std::vector<std::string> feed(const GazeSample& sample);

  std::string layout_message() const;
  std::string state_message() const;
  std::string metrics_message() const;
  void reset_engine();

  bool greeted_ = false;
  bool closed_ = false;
  Engine engine_;
  std::optional<std::string> target_;
  std::optional<double> first_t_ms_;

  std::vector<GazeSample> replay_samples_;
  std::size_t replay_cursor_ = 0;
  bool playing_ = false;
  double speed_ = 1.0;
  double replay_origin_ms_ = 0.0;  // wall time at which replay_samples_[0] is due
};

/// Builds an error line: {"type":"error","code":...,"message":...}.
std::string error_message(std::string_view code, std::string_view message);

/// Newline-delimited session server on a TCP socket. One thread and one
/// Session per connection.
class Server {
 public:
  /// Port 0 picks an ephemeral port; see port() after start().
  Server(std::string host, std::uint16_t port);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds and starts accepting. Throws Error if the socket cannot be bound.
  void start();
  std::uint16_t port() const { return port_; }
  /// Stops accepting and closes all connections; idempotent.
  void stop();
  /// Blocks until stop() is called from another thread.
  void wait();

 private:
  void accept_loop();
  void serve_connection(int fd);

  std::string host_;
  std::uint16_t port_;
  int listen_fd_ = -1;
  std::atomic<bool> running_{false};
  std::thread acceptor_;
  std::mutex mu_;
  std::vector<std::thread> connections_;
};

}  // namespace quickpie
