#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <chrono>
#include <cstring>

#include "quickpie/errors.hpp"
#include "quickpie/service.hpp"

namespace quickpie {

namespace {

constexpr int kIdlePollMs = 100;
constexpr std::size_t kMaxLineBytes = 1 << 20;

bool send_all(int fd, const std::string& data) {
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    sent += static_cast<std::size_t>(n);
  }
  return true;
}

bool send_lines(int fd, const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out.empty() || send_all(fd, out);
}

}  // namespace

Server::Server(std::string host, std::uint16_t port) : host_(std::move(host)), port_(port) {}

Server::~Server() { stop(); }

void Server::start() {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port_);
  if (const int rc = ::getaddrinfo(host_.empty() ? nullptr : host_.c_str(), service.c_str(), &hints, &res)) {
    throw Error("cannot resolve " + host_ + ": " + ::gai_strerror(rc));
  }
  const int fd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
  if (fd < 0) {
    ::freeaddrinfo(res);
    throw Error(std::string("socket: ") + std::strerror(errno));
  }
  const int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(fd, res->ai_addr, res->ai_addrlen) != 0 || ::listen(fd, 16) != 0) {
    const std::string why = std::strerror(errno);
    ::freeaddrinfo(res);
    ::close(fd);
    throw Error("cannot listen on " + host_ + ":" + service + ": " + why);
  }
  ::freeaddrinfo(res);

  sockaddr_in bound{};
  socklen_t len = sizeof bound;
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = ntohs(bound.sin_port);
  listen_fd_ = fd;
  running_ = true;
  acceptor_ = std::thread([this] { accept_loop(); });
}

void Server::stop() {
  if (!running_.exchange(false)) return;
  if (acceptor_.joinable()) acceptor_.join();
  std::vector<std::thread> connections;
  {
    std::lock_guard lock(mu_);
    connections.swap(connections_);
  }
  for (auto& t : connections) t.join();
  ::close(listen_fd_);
  listen_fd_ = -1;
}

void Server::wait() {
  while (running_) std::this_thread::sleep_for(std::chrono::milliseconds(kIdlePollMs));
}

void Server::accept_loop() {
  while (running_) {
    pollfd p{listen_fd_, POLLIN, 0};
    if (::poll(&p, 1, kIdlePollMs) <= 0) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    // TODO: reap finished connection threads instead of holding them until stop().
    std::lock_guard lock(mu_);
    connections_.emplace_back([this, fd] { serve_connection(fd); });
  }
}

void Server::serve_connection(int fd) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto now_ms = [&] { return std::chrono::duration<double, std::milli>(Clock::now() - start).count(); };

  Session session;
  std::string pending;
  char buf[4096];
  bool open = true;
  while (open && running_ && !session.closed()) {
    int timeout = kIdlePollMs;
    if (const auto due = session.next_replay_due_ms()) {
      const double wait = *due - now_ms();
      timeout = wait <= 0 ? 0 : std::min(kIdlePollMs, static_cast<int>(std::ceil(wait)));
    }
    pollfd p{fd, POLLIN, 0};
    const int ready = ::poll(&p, 1, timeout);
    if (ready > 0) {
      const ssize_t n = ::recv(fd, buf, sizeof buf, 0);
      if (n <= 0) break;
      pending.append(buf, static_cast<std::size_t>(n));
      std::size_t nl;
      while (open && !session.closed() && (nl = pending.find('\n')) != std::string::npos) {
        std::string line = pending.substr(0, nl);
        pending.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        open = send_lines(fd, session.handle_line(line, now_ms()));
      }
      if (pending.size() > kMaxLineBytes) {
        pending.clear();
        open = send_lines(fd, {error_message("line_too_long", "message exceeds 1 MiB")});
      }
    }
    if (open) open = send_lines(fd, session.pump_replay(now_ms()));
  }
  ::shutdown(fd, SHUT_RDWR);
  ::close(fd);
}

}  // namespace quickpie
