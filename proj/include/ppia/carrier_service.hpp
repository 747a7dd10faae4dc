// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "ppia/auth_core.hpp"
#include "ppia/entropy.hpp"
#include "ppia/profile_store.hpp"
#include "ppia/wire.hpp"

namespace ppia {

struct Endpoint {
  std::string host = "127.0.0.1";
  std::uint16_t port = 7340;
};

/// "host:port"; a bare port means loopback.
Endpoint parse_endpoint(std::string_view text);

/// Blocking stream connection exchanging whole frames.
class Connection {
 public:
  static Connection open(const Endpoint& endpoint);
  explicit Connection(int fd) : fd_(fd) {}
  Connection(Connection&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  Connection& operator=(Connection&& other) noexcept;
  Connection(const Connection&) = delete;
  Connection& operator=(const Connection&) = delete;
  ~Connection();

  void send(const wire::Message& message);
  void send_raw(std::span<const std::uint8_t> bytes);
  wire::Message receive();
  wire::Message request(const wire::Message& message);

 private:
  int fd_ = -1;
};

struct CarrierConfig {
  Endpoint listen;
  std::filesystem::path store_root = "carrier-data";
  std::chrono::seconds session_timeout{60};
  std::optional<std::uint64_t> seed;  // deterministic challenges, test mode only
};

/// Profile store plus the challenge/score endpoint.
class CarrierService {
 public:
  explicit CarrierService(CarrierConfig config);
  ~CarrierService();
  CarrierService(const CarrierService&) = delete;
  CarrierService& operator=(const CarrierService&) = delete;

  /// Binds and starts accepting; returns the bound port (useful with port 0).
  std::uint16_t start();
  void stop();
  /// Blocks until stop() is called from another thread or a signal handler.
  void wait();

  /// Transport-independent request handling.
  wire::Message handle(const wire::Message& request);

  /// Verdict of the most recent completed authentication for a user.
  std::optional<AuthDecision> last_decision(const std::string& user_id) const;
  std::size_t open_sessions() const;
  const ProfileStore& store() const { return store_; }

 private:
  struct PendingSession {
    std::string user_id;
    std::shared_ptr<SessionState> state;
  };

  wire::Message on_store(const wire::StoreProfile& request);
  wire::Message on_auth_init(const wire::AuthInit& request);
  wire::Message on_response(const wire::Response& request);
  void serve_connection(int fd);
  void accept_loop();
  void sweep_expired_locked();

  CarrierConfig config_;
  ProfileStore store_;

  std::mutex entropy_mutex_;
  Entropy entropy_;

  mutable std::mutex sessions_mutex_;
  std::map<std::string, PendingSession> sessions_;

  mutable std::mutex results_mutex_;
  std::map<std::string, AuthDecision> results_;

  std::atomic<bool> running_{false};
  int listen_fd_ = -1;
  std::mutex clients_mutex_;
  std::set<int> client_fds_;
  std::size_t active_connections_ = 0;
  std::condition_variable clients_done_;
  std::jthread acceptor_;
};

}  // namespace ppia
