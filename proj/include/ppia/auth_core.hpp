// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppia/bigint.hpp"
#include "ppia/entropy.hpp"
#include "ppia/paillier.hpp"
#include "ppia/profile_codec.hpp"

namespace ppia {

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SessionError : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

/// Message 1, carrier to device.
struct AuthChallenge {
  std::string session_id;
  paillier::PublicKey pk;
  std::vector<BigInt> powered_coeffs;  // Enc(p_i)^theta mod n^2
  std::vector<BigInt> blinded_r;       // R_i^d, forwarded verbatim
  ProfileMeta meta;

  bool operator==(const AuthChallenge&) const = default;
};

/// Carrier-private state for one challenge. Consumed by the first score.
class SessionState {
 public:
  SessionState(std::string id, BigInt theta, std::shared_ptr<const EncryptedProfile> profile);

  const std::string& id() const { return id_; }
  const BigInt& theta() const { return theta_; }
  const EncryptedProfile& profile() const { return *profile_; }
  std::chrono::steady_clock::time_point created() const { return created_; }
  bool consumed() const { return consumed_.load(); }
  bool expired(std::chrono::steady_clock::duration timeout) const;

  /// Atomically marks the session used. False if it already was.
  bool try_consume() { return !consumed_.exchange(true); }

 private:
  std::string id_;
  BigInt theta_;
  std::shared_ptr<const EncryptedProfile> profile_;
  std::chrono::steady_clock::time_point created_;
  std::atomic<bool> consumed_{false};
};

struct IssuedChallenge {
  AuthChallenge challenge;
  std::shared_ptr<SessionState> session;
};

/// One shuffled triple of message 2.
struct AuthResponseEntry {
  BigInt cj;       // Enc(r(j) d theta p(b_j))
  BigInt upsilon;  // (prod R_i^(b_j^i))^(d r(j))
  BigInt rho;      // R'^(r(j) d)

  bool operator==(const AuthResponseEntry&) const = default;
};

/// Either a nonnegative rational or infinity.
class Dissimilarity {
 public:
  static Dissimilarity infinite() { return Dissimilarity(true, 0, 1); }
  static Dissimilarity ratio(std::uint64_t numerator, std::uint64_t denominator);

  bool is_infinite() const { return infinite_; }
  std::uint64_t numerator() const { return numerator_; }
  std::uint64_t denominator() const { return denominator_; }
  std::string to_string() const;

  bool operator==(const Dissimilarity&) const = default;

 private:
  Dissimilarity(bool infinite, std::uint64_t num, std::uint64_t den)
      : infinite_(infinite), numerator_(num), denominator_(den) {}
  bool infinite_;
  std::uint64_t numerator_;
  std::uint64_t denominator_;
};

struct AuthDecision {
  std::uint64_t match_count = 0;
  Dissimilarity dissimilarity = Dissimilarity::infinite();
  bool accepted = false;
  Mode mode = Mode::kCaseA;

  bool operator==(const AuthDecision&) const = default;
};

/// Explicit finite support table of an integer similarity l(z, y): for each
/// sample value y, the features z with l(z, y) > 0 and their weights.
class SimilarityFunction {
 public:
  explicit SimilarityFunction(std::uint32_t max_weight) : max_weight_(max_weight) {}

  /// Adds l(z, y) = weight. Throws on weight 0, weight > L, or a repeated pair.
  void add(const FeatureValue& y, const FeatureValue& z, std::uint32_t weight);

  std::uint32_t max_weight() const { return max_weight_; }
  bool covers(const FeatureValue& y) const;
  /// l(z, y); zero outside the support.
  std::uint32_t weight(const FeatureValue& z, const FeatureValue& y) const;
  const std::map<FeatureValue, std::vector<std::pair<FeatureValue, std::uint32_t>>>& table() const {
    return table_;
  }
  std::size_t entry_count() const;

  /// l(z, z) = 1 over the given values.
  static SimilarityFunction equality(const std::vector<FeatureValue>& values);

 private:
  std::uint32_t max_weight_;
  std::map<FeatureValue, std::vector<std::pair<FeatureValue, std::uint32_t>>> table_;
};

/// Test hook: fixed theta and session id.
IssuedChallenge carrier_challenge_with(std::shared_ptr<const EncryptedProfile> profile,
                                       const BigInt& theta, std::string session_id);

IssuedChallenge carrier_challenge(std::shared_ptr<const EncryptedProfile> profile,
                                  Entropy& entropy);

/// Parallel degree for per-entry triple construction; 0 = hardware threads.
struct RespondOptions {
  unsigned parallelism = 0;
};

std::vector<AuthResponseEntry> device_respond(const DeviceSecret& secret,
                                              const AuthChallenge& challenge,
                                              const FeatureSet& sample, Entropy& entropy,
                                              const RespondOptions& options = {});

/// Expanded multiset for the weighted protocol: each z with l_z > 0 repeated
/// l_z times, where l_z = sum over the sample of l(z, y).
std::vector<std::pair<FeatureValue, std::uint64_t>> expand_weighted(const FeatureSet& sample,
                                                                    const SimilarityFunction& sim);

std::vector<AuthResponseEntry> device_respond_weighted(const DeviceSecret& secret,
                                                       const AuthChallenge& challenge,
                                                       const FeatureSet& sample,
                                                       const SimilarityFunction& sim,
                                                       Entropy& entropy,
                                                       const RespondOptions& options = {});

/// Counts entries whose c_j * upsilon^(n theta) equals rho^(n theta).
/// Consumes the session.
std::uint64_t carrier_score(SessionState& session, const std::vector<AuthResponseEntry>& entries);

/// Case A/B: accept iff match total >= threshold, dissimilarity 1/total.
/// Case C: L1 = s + t - 2*matches, accept iff L1 <= threshold.
AuthDecision decide(std::uint64_t match_count, const ProfileMeta& meta,
                    std::uint64_t profile_size, std::uint64_t sample_size,
                    std::uint64_t threshold);

}  // namespace ppia
