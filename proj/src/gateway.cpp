#include "facefuse/gateway.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "facefuse/errors.hpp"
#include "facefuse/format.hpp"

namespace facefuse {

GatewaySession::GatewaySession(SessionConfig config, Sender send)
    : base_(std::move(config)), send_(std::move(send)) {}

void GatewaySession::fail(const std::string& reason) {
  send_("ERR " + reason);
  closed_ = true;
}

void GatewaySession::start() {
  const SessionConfig config = session_config_for(header_, base_);
  state_period_ms_ = std::max<Millis>(1, 1000 / config.state_hz);
  validator_.emplace(header_.screen, header_.camera);
  runner_ = std::make_unique<SessionRunner>(config, [this](const TickResult& r) { on_tick(r); });
}

void GatewaySession::on_tick(const TickResult& tick) {
  for (const auto& e : tick.events) send_(render_event(e));
  if (tick.snapshot.t >= next_state_t_) {
    send_(render_state(tick, runner_->engine()));
    while (next_state_t_ <= tick.snapshot.t) next_state_t_ += state_period_ms_;
  }
}

bool GatewaySession::on_line(std::string_view line) {
  if (closed_) return false;
  ++line_no_;
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
  if (line == "END") {
    on_end();
    return false;
  }
  try {
    if (runner_) {
      TraceHeader scratch;
      if (parse_directive(line, line_no_, false, scratch)) {
        fail("protocol line " + std::to_string(line_no_) + ": header directive after the first frame");
        return false;
      }
    } else if (parse_directive(line, line_no_, false, header_)) {
      return true;
    }
    const auto frame = parse_frame_line(line, line_no_);
    if (!frame) return true;
    if (!runner_) start();
    try {
      validator_->validate(*frame);
    } catch (const Error& e) {
      fail("validation line " + std::to_string(line_no_) + ": " + std::string(to_string(e.code())) + ": " + e.what());
      return false;
    }
    runner_->push(*frame);
  } catch (const LineError& e) {
    fail(std::string(e.code() == ErrorCode::ParseError ? "parse " : "validation ") + e.what());
  } catch (const Error& e) {
    fail(std::string("config: ") + e.what());
  }
  return !closed_;
}

void GatewaySession::on_end() {
  if (closed_) return;
  closed_ = true;
  if (runner_) runner_->finish();
}

namespace {

void send_all(int fd, const std::string& text) {
  std::size_t sent = 0;
  while (sent < text.size()) {
    const ssize_t n = ::send(fd, text.data() + sent, text.size() - sent, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return;
    sent += static_cast<std::size_t>(n);
  }
}

}  // namespace

Gateway::Gateway(SessionConfig config) : config_(std::move(config)) {}

Gateway::~Gateway() { stop(); }

void Gateway::start(std::uint16_t port) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw Error(ErrorCode::Protocol, std::string("socket: ") + std::strerror(errno));
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 ||
      ::listen(listen_fd_, 16) < 0) {
    const std::string reason = std::strerror(errno);
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw Error(ErrorCode::Protocol, "cannot listen on port " + std::to_string(port) + ": " + reason);
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  running_ = true;
  acceptor_ = std::thread([this] { accept_loop(); });
}

void Gateway::accept_loop() {
  while (running_) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      break;
    }
    std::lock_guard lock(mutex_);
    if (!running_) {
      ::close(fd);
      break;
    }
    open_fds_.insert(fd);
    workers_.emplace_back([this, fd] { serve_connection(fd); });
  }
}

void Gateway::serve_connection(int fd) {
  GatewaySession session(config_, [fd](const std::string& line) { send_all(fd, line + "\n"); });
  std::string buffer;
  char chunk[4096];
  bool open = true;
  while (open) {
    const ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      if (!buffer.empty()) session.on_line(buffer);
      session.on_end();
      break;
    }
    buffer.append(chunk, static_cast<std::size_t>(n));
    std::size_t start = 0;
    for (auto nl = buffer.find('\n'); nl != std::string::npos; nl = buffer.find('\n', start)) {
      if (!session.on_line(std::string_view(buffer).substr(start, nl - start))) {
        open = false;
        break;
      }
      start = nl + 1;
    }
    buffer.erase(0, start);
  }
  ::shutdown(fd, SHUT_RDWR);
  std::lock_guard lock(mutex_);
  if (open_fds_.erase(fd)) ::close(fd);
}

void Gateway::wait() {
  if (acceptor_.joinable()) acceptor_.join();
}

void Gateway::stop() {
  if (listen_fd_ < 0) return;
  running_ = false;
  ::shutdown(listen_fd_, SHUT_RDWR);
  if (acceptor_.joinable()) acceptor_.join();
  ::close(listen_fd_);
  listen_fd_ = -1;
  std::vector<std::thread> workers;
  {
    std::lock_guard lock(mutex_);
    for (const int fd : open_fds_) ::shutdown(fd, SHUT_RDWR);
    workers.swap(workers_);
  }
  for (auto& w : workers) w.join();
}

}  // namespace facefuse
