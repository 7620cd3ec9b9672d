#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "facefuse/config.hpp"
#include "facefuse/replay.hpp"

namespace facefuse {

/// One client session of the streaming protocol, independent of the
/// transport. Input is trace-format text, one line per call; output lines
/// (no newline) go to `send`: event lines exactly as replay writes them,
/// then a STATE line at most every 1000/state_hz ms of session time. Header directives are accepted until the
/// first frame. A line reading END flushes the remaining ticks.
class GatewaySession {
 public:
  using Sender = std::function<void(const std::string&)>;

  GatewaySession(SessionConfig config, Sender send);

  /// Returns false once the session is over (END, or an ERR was sent).
  bool on_line(std::string_view line);

  /// Transport closed: runs the remaining ticks.
  void on_end();

  bool closed() const { return closed_; }

 private:
  void start();
  void on_tick(const TickResult& tick);
  void fail(const std::string& reason);

  SessionConfig base_;
  Sender send_;
  TraceHeader header_;
  std::size_t line_no_ = 0;
  std::optional<FrameValidator> validator_;
  std::unique_ptr<SessionRunner> runner_;
  Millis state_period_ms_ = 50;
  Millis next_state_t_ = 0;
  bool closed_ = false;
};

/// Local TCP server with one GatewaySession per connection, each on its own
/// thread.
class Gateway {
 public:
  explicit Gateway(SessionConfig config);
  ~Gateway();

  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  /// Binds 127.0.0.1:port (0 picks a free port) and starts accepting.
  /// Throws Error(Protocol) if the socket cannot be opened.
  void start(std::uint16_t port);

  std::uint16_t port() const { return port_; }

  /// Blocks until the listener closes. Not to be combined with stop() from
  /// another thread.
  void wait();

  /// Closes the listener and every open connection, then joins threads.
  void stop();

 private:
  void accept_loop();
  void serve_connection(int fd);

  SessionConfig config_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> running_{false};
  std::thread acceptor_;
  std::mutex mutex_;
  std::vector<std::thread> workers_;
  std::set<int> open_fds_;
};

}  // namespace facefuse
