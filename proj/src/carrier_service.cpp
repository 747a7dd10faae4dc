// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#include "ppia/carrier_service.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <spdlog/spdlog.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <system_error>

namespace ppia {
namespace {

[[noreturn]] void throw_errno(const std::string& what) {
  throw std::system_error(errno, std::generic_category(), what);
}

// Reads exactly out.size() bytes. False on a clean end of stream before the
// first byte.
bool read_exact(int fd, std::span<std::uint8_t> out) {
  std::size_t got = 0;
  while (got < out.size()) {
    ssize_t n = ::recv(fd, out.data() + got, out.size() - got, 0);
    if (n == 0) {
      if (got == 0) return false;
      throw std::runtime_error("connection closed mid-frame");
    }
    if (n < 0) {
      if (errno == EINTR) continue;
      throw_errno("recv");
    }
    got += static_cast<std::size_t>(n);
  }
  return true;
}

void write_all(int fd, std::span<const std::uint8_t> bytes) {
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    ssize_t n = ::send(fd, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw_errno("send");
    }
    sent += static_cast<std::size_t>(n);
  }
}

std::uint32_t header_length(std::span<const std::uint8_t, wire::kHeaderBytes> h) {
  return (std::uint32_t{h[2]} << 24) | (std::uint32_t{h[3]} << 16) | (std::uint32_t{h[4]} << 8) |
         std::uint32_t{h[5]};
}

addrinfo* resolve(const Endpoint& endpoint, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* result = nullptr;
  const std::string port = std::to_string(endpoint.port);
  int rc = ::getaddrinfo(endpoint.host.c_str(), port.c_str(), &hints, &result);
  if (rc != 0) {
    throw std::runtime_error("cannot resolve " + endpoint.host + ": " + ::gai_strerror(rc));
  }
  return result;
}

wire::Message error_message(wire::ErrorCode code, std::string text) {
  return wire::Error{code, std::move(text)};
}

}  // namespace

Endpoint parse_endpoint(std::string_view text) {
  Endpoint out;
  std::string_view port_text = text;
  if (auto colon = text.rfind(':'); colon != std::string_view::npos) {
    out.host = std::string(text.substr(0, colon));
    port_text = text.substr(colon + 1);
    if (out.host.size() >= 2 && out.host.front() == '[' && out.host.back() == ']') {
      out.host = out.host.substr(1, out.host.size() - 2);
    }
  }
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), value);
  if (ec != std::errc() || ptr != port_text.data() + port_text.size() || value > 65535 ||
      out.host.empty()) {
    throw std::invalid_argument("invalid endpoint: " + std::string(text));
  }
  out.port = static_cast<std::uint16_t>(value);
  return out;
}

Connection Connection::open(const Endpoint& endpoint) {
  addrinfo* list = resolve(endpoint, false);
  int fd = -1;
  int last_errno = 0;
  for (addrinfo* ai = list; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    last_errno = errno;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(list);
  if (fd < 0) {
    errno = last_errno;
    throw_errno("connect " + endpoint.host + ":" + std::to_string(endpoint.port));
  }
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return Connection(fd);
}

Connection& Connection::operator=(Connection&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = std::exchange(other.fd_, -1);
  }
  return *this;
}

Connection::~Connection() {
  if (fd_ >= 0) ::close(fd_);
}

void Connection::send(const wire::Message& message) { send_raw(wire::encode_frame(message)); }

void Connection::send_raw(std::span<const std::uint8_t> bytes) { write_all(fd_, bytes); }

wire::Message Connection::receive() {
  std::array<std::uint8_t, wire::kHeaderBytes> header{};
  if (!read_exact(fd_, header)) throw std::runtime_error("connection closed by peer");
  const wire::FrameHeader h = wire::decode_header(header);
  std::vector<std::uint8_t> payload(h.payload_length);
  if (!payload.empty() && !read_exact(fd_, payload)) throw std::runtime_error("connection closed mid-frame");
  return wire::decode_payload(h.type, payload);
}

wire::Message Connection::request(const wire::Message& message) {
  send(message);
  return receive();
}

CarrierService::CarrierService(CarrierConfig config)
    : config_(std::move(config)),
      store_(config_.store_root),
      entropy_(config_.seed ? Entropy::from_seed(*config_.seed) : Entropy::from_os()) {}

CarrierService::~CarrierService() { stop(); }

std::uint16_t CarrierService::start() {
  addrinfo* list = resolve(config_.listen, true);
  int fd = -1;
  for (addrinfo* ai = list; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
    if (fd < 0) continue;
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd, 64) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(list);
  if (fd < 0) throw_errno("bind " + config_.listen.host + ":" + std::to_string(config_.listen.port));

  sockaddr_storage bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&bound), &len);
  std::uint16_t port = bound.ss_family == AF_INET6
                           ? ntohs(reinterpret_cast<sockaddr_in6*>(&bound)->sin6_port)
                           : ntohs(reinterpret_cast<sockaddr_in*>(&bound)->sin_port);
  listen_fd_ = fd;
  running_ = true;
  acceptor_ = std::jthread([this] { accept_loop(); });
  spdlog::info("carrier listening on {}:{}", config_.listen.host, port);
  return port;
}

void CarrierService::stop() {
  if (!running_.exchange(false)) return;
  if (acceptor_.joinable()) acceptor_.join();
  {
    std::lock_guard guard(clients_mutex_);
    for (int fd : client_fds_) ::shutdown(fd, SHUT_RDWR);
  }
  {
    std::unique_lock lock(clients_mutex_);
    clients_done_.wait(lock, [this] { return active_connections_ == 0; });
  }
  if (listen_fd_ >= 0) ::close(listen_fd_);
  listen_fd_ = -1;
}

void CarrierService::wait() {
  while (running_) std::this_thread::sleep_for(std::chrono::milliseconds(100));
}

void CarrierService::accept_loop() {
  while (running_) {
    pollfd p{listen_fd_, POLLIN, 0};
    int rc = ::poll(&p, 1, 100);
    if (rc <= 0) continue;
    int client = ::accept4(listen_fd_, nullptr, nullptr, SOCK_CLOEXEC);
    if (client < 0) continue;
    int one = 1;
    ::setsockopt(client, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    {
      std::lock_guard guard(clients_mutex_);
      client_fds_.insert(client);
      ++active_connections_;
    }
    std::thread([this, client] { serve_connection(client); }).detach();
  }
}

void CarrierService::serve_connection(int fd) {
  try {
    for (;;) {
      std::array<std::uint8_t, wire::kHeaderBytes> header{};
      if (!read_exact(fd, header)) break;
      const std::uint32_t length = header_length(header);
      if (length > wire::kMaxPayloadBytes) {
        write_all(fd, wire::encode_frame(error_message(wire::ErrorCode::kDecode, "payload exceeds 64 MiB")));
        break;
      }
      std::vector<std::uint8_t> payload(length);
      if (length > 0 && !read_exact(fd, payload)) break;

      wire::Message reply;
      try {
        const wire::FrameHeader h = wire::decode_header(header);
        reply = handle(wire::decode_payload(h.type, payload));
      } catch (const DecodeError& e) {
        spdlog::warn("rejecting malformed frame: {}", e.what());
        reply = error_message(wire::ErrorCode::kDecode, e.what());
      }
      write_all(fd, wire::encode_frame(reply));
    }
  } catch (const std::exception& e) {
    if (running_) spdlog::warn("connection dropped: {}", e.what());
  }
  std::lock_guard guard(clients_mutex_);
  client_fds_.erase(fd);
  ::close(fd);
  --active_connections_;
  clients_done_.notify_all();
}

wire::Message CarrierService::handle(const wire::Message& request) {
  try {
    if (auto* m = std::get_if<wire::StoreProfile>(&request)) return on_store(*m);
    if (auto* m = std::get_if<wire::AuthInit>(&request)) return on_auth_init(*m);
    if (auto* m = std::get_if<wire::Response>(&request)) return on_response(*m);
    return error_message(wire::ErrorCode::kDecode, "unexpected message type for the carrier");
  } catch (const SessionError& e) {
    return error_message(wire::ErrorCode::kSession, e.what());
  } catch (const DecodeError& e) {
    return error_message(wire::ErrorCode::kDecode, e.what());
  } catch (const std::exception& e) {
    spdlog::warn("request rejected: {}", e.what());
    return error_message(wire::ErrorCode::kRejected, e.what());
  }
}

wire::Message CarrierService::on_store(const wire::StoreProfile& request) {
  store_.store(request.user_id, request.profile);
  spdlog::info("stored profile for '{}' (s={}, mode={}, threshold={})", request.user_id,
               request.profile.size, to_string(request.profile.meta.mode), request.profile.threshold);
  return wire::StoreAck{};
}

wire::Message CarrierService::on_auth_init(const wire::AuthInit& request) {
  auto profile = store_.load(request.user_id);
  if (!profile) return error_message(wire::ErrorCode::kUnknownUser, "unknown user");
  auto shared = std::make_shared<const EncryptedProfile>(std::move(*profile));

  IssuedChallenge issued;
  {
    std::lock_guard guard(entropy_mutex_);
    issued = carrier_challenge(shared, entropy_);
  }
  {
    std::lock_guard guard(sessions_mutex_);
    sweep_expired_locked();
    sessions_.emplace(issued.challenge.session_id, PendingSession{request.user_id, issued.session});
  }
  spdlog::info("challenge {} issued to '{}' (announced sample size {})", issued.challenge.session_id,
               request.user_id, request.sample_size);
  return wire::Challenge{std::move(issued.challenge)};
}

wire::Message CarrierService::on_response(const wire::Response& request) {
  PendingSession pending;
  {
    std::lock_guard guard(sessions_mutex_);
    sweep_expired_locked();
    auto it = sessions_.find(request.session_id);
    if (it == sessions_.end()) {
      return error_message(wire::ErrorCode::kSession, "unknown or expired session");
    }
    pending = it->second;
  }
  const std::uint64_t matches = carrier_score(*pending.state, request.entries);
  const EncryptedProfile& profile = pending.state->profile();
  AuthDecision decision =
      decide(matches, profile.meta, profile.size, request.entries.size(), profile.threshold);
  spdlog::info("session {}: {} entries observed, {} matched, {}", request.session_id,
               request.entries.size(), matches, decision.accepted ? "accepted" : "rejected");
  {
    std::lock_guard guard(results_mutex_);
    results_.insert_or_assign(pending.user_id, decision);
  }
  return wire::Result{decision};
}

void CarrierService::sweep_expired_locked() {
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    if (it->second.state->expired(config_.session_timeout)) {
      it = sessions_.erase(it);
    } else {
      ++it;
    }
  }
}

std::optional<AuthDecision> CarrierService::last_decision(const std::string& user_id) const {
  std::lock_guard guard(results_mutex_);
  auto it = results_.find(user_id);
  if (it == results_.end()) return std::nullopt;
  return it->second;
}

std::size_t CarrierService::open_sessions() const {
  std::lock_guard guard(sessions_mutex_);
  return sessions_.size();
}

}  // namespace ppia
