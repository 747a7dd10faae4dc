// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#include "ppia/auth_core.hpp"

#include <spdlog/spdlog.h>

#include <numeric>

#include "parallel.hpp"

namespace ppia {

SessionState::SessionState(std::string id, BigInt theta,
                           std::shared_ptr<const EncryptedProfile> profile)
    : id_(std::move(id)),
      theta_(std::move(theta)),
      profile_(std::move(profile)),
      created_(std::chrono::steady_clock::now()) {
  if (theta_ < 1) throw std::invalid_argument("session: theta must be at least 1");
  if (!profile_) throw std::invalid_argument("session: missing profile");
}

bool SessionState::expired(std::chrono::steady_clock::duration timeout) const {
  return std::chrono::steady_clock::now() - created_ > timeout;
}

Dissimilarity Dissimilarity::ratio(std::uint64_t numerator, std::uint64_t denominator) {
  if (denominator == 0) throw std::invalid_argument("dissimilarity: zero denominator");
  std::uint64_t g = std::gcd(numerator, denominator);
  if (g == 0) g = 1;
  return Dissimilarity(false, numerator / g, denominator / g);
}

std::string Dissimilarity::to_string() const {
  if (infinite_) return "inf";
  if (denominator_ == 1) return std::to_string(numerator_);
  return std::to_string(numerator_) + "/" + std::to_string(denominator_);
}

void SimilarityFunction::add(const FeatureValue& y, const FeatureValue& z, std::uint32_t weight) {
  if (weight == 0 || weight > max_weight_) {
    throw std::invalid_argument("similarity weight outside [1, L]");
  }
  auto& row = table_[y];
  for (const auto& [existing, w] : row) {
    if (existing == z) throw std::invalid_argument("similarity table repeats a (y, z) pair");
  }
  row.emplace_back(z, weight);
}

bool SimilarityFunction::covers(const FeatureValue& y) const { return table_.contains(y); }

std::uint32_t SimilarityFunction::weight(const FeatureValue& z, const FeatureValue& y) const {
  auto it = table_.find(y);
  if (it == table_.end()) return 0;
  for (const auto& [candidate, w] : it->second) {
    if (candidate == z) return w;
  }
  return 0;
}

std::size_t SimilarityFunction::entry_count() const {
  std::size_t total = 0;
  for (const auto& [y, row] : table_) total += row.size();
  return total;
}

SimilarityFunction SimilarityFunction::equality(const std::vector<FeatureValue>& values) {
  SimilarityFunction sim(1);
  for (const auto& v : values) sim.add(v, v, 1);
  return sim;
}

IssuedChallenge carrier_challenge_with(std::shared_ptr<const EncryptedProfile> profile,
                                       const BigInt& theta, std::string session_id) {
  if (!profile) throw std::invalid_argument("carrier_challenge: missing profile");
  const auto& pk = profile->pk;
  if (theta < 1 || theta >= pk.n) throw std::invalid_argument("carrier_challenge: theta outside [1, n)");
  if (profile->enc_coeffs.size() != profile->blinded_r.size() ||
      profile->enc_coeffs.size() != profile->size + 1) {
    throw std::invalid_argument("carrier_challenge: inconsistent profile");
  }

  IssuedChallenge out;
  out.challenge.session_id = session_id;
  out.challenge.pk = pk;
  out.challenge.meta = profile->meta;
  out.challenge.blinded_r = profile->blinded_r;
  out.challenge.powered_coeffs.reserve(profile->enc_coeffs.size());
  for (const auto& c : profile->enc_coeffs) {
    out.challenge.powered_coeffs.push_back(pow_mod(c.value, theta, pk.n_squared));
  }
  out.session = std::make_shared<SessionState>(std::move(session_id), theta, std::move(profile));
  return out;
}

IssuedChallenge carrier_challenge(std::shared_ptr<const EncryptedProfile> profile,
                                  Entropy& entropy) {
  if (!profile) throw std::invalid_argument("carrier_challenge: missing profile");
  BigInt theta = entropy.unit(profile->pk.n);
  std::string id = to_hex(entropy.bytes(16));
  return carrier_challenge_with(std::move(profile), theta, std::move(id));
}

namespace {

// prod_i bases[i]^(x^i) mod m, evaluated as ((b_s^x * b_{s-1})^x * ...) * b_0.
BigInt horner_power(const std::vector<BigInt>& bases, const BigInt& x, const BigInt& mod) {
  BigInt acc = bases.back();
  for (std::size_t i = bases.size() - 1; i-- > 0;) {
    acc = reduce(BigInt(pow_mod(acc, x, mod) * bases[i]), mod);
  }
  return acc;
}

void check_challenge(const DeviceSecret& secret, const AuthChallenge& challenge, Mode sample_mode) {
  if (secret.meta != challenge.meta) {
    throw ProtocolError("device_respond: challenge mode does not match the device secret");
  }
  if (sample_mode != challenge.meta.mode) {
    throw ProtocolError("device_respond: sample mode does not match the challenge");
  }
  if (challenge.powered_coeffs.empty() ||
      challenge.powered_coeffs.size() != challenge.blinded_r.size()) {
    throw ProtocolError("device_respond: malformed challenge");
  }
  const BigInt& n2 = challenge.pk.n_squared;
  for (const auto* seq : {&challenge.powered_coeffs, &challenge.blinded_r}) {
    for (const auto& v : *seq) {
      if (!is_unit(v, n2)) throw ProtocolError("device_respond: challenge value is not a unit");
    }
  }
  if (!is_unit(secret.r_prime, n2)) throw ProtocolError("device_respond: R' does not fit this key");
}

std::vector<AuthResponseEntry> respond_values(const DeviceSecret& secret,
                                              const AuthChallenge& challenge,
                                              const std::vector<const BigInt*>& values,
                                              Entropy& entropy, const RespondOptions& options) {
  if (values.empty()) throw ProtocolError("device_respond: empty sample");
  const BigInt& n2 = challenge.pk.n_squared;

  // Randomness is drawn up front so seeded runs do not depend on scheduling.
  std::vector<BigInt> exponents;
  exponents.reserve(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) exponents.push_back(entropy.unit(n2));

  std::vector<AuthResponseEntry> entries(values.size());
  detail::parallel_for(values.size(), detail::resolve_parallelism(options.parallelism),
                       [&](std::size_t j) {
    const BigInt& b = *values[j];
    const BigInt& r = exponents[j];
    BigInt dr = secret.d * r;
    entries[j].cj = pow_mod(horner_power(challenge.powered_coeffs, b, n2), dr, n2);
    entries[j].upsilon = pow_mod(horner_power(challenge.blinded_r, b, n2), r, n2);
    entries[j].rho = pow_mod(secret.r_prime, dr, n2);
  });
  for (auto& r : exponents) wipe(r);

  entropy.shuffle(entries);
  return entries;
}

}  // namespace

std::vector<AuthResponseEntry> device_respond(const DeviceSecret& secret,
                                              const AuthChallenge& challenge,
                                              const FeatureSet& sample, Entropy& entropy,
                                              const RespondOptions& options) {
  if (sample.mode() == Mode::kCaseB) {
    throw ProtocolError("device_respond: case-b requires a similarity function");
  }
  check_challenge(secret, challenge, sample.mode());
  if (sample.meta() != challenge.meta) {
    throw ProtocolError("device_respond: numeric parameters do not match the challenge");
  }
  std::vector<const BigInt*> values;
  for (const auto& v : sample.values()) values.push_back(&v.value());
  return respond_values(secret, challenge, values, entropy, options);
}

std::vector<std::pair<FeatureValue, std::uint64_t>> expand_weighted(const FeatureSet& sample,
                                                                    const SimilarityFunction& sim) {
  std::map<FeatureValue, std::uint64_t> totals;
  for (const auto& y : sample.values()) {
    if (!sim.covers(y)) throw ProtocolError("similarity table does not cover a sample value");
    for (const auto& [z, w] : sim.table().at(y)) totals[z] += w;
  }
  return {totals.begin(), totals.end()};
}

std::vector<AuthResponseEntry> device_respond_weighted(const DeviceSecret& secret,
                                                       const AuthChallenge& challenge,
                                                       const FeatureSet& sample,
                                                       const SimilarityFunction& sim,
                                                       Entropy& entropy,
                                                       const RespondOptions& options) {
  if (sample.mode() != Mode::kCaseB) throw ProtocolError("device_respond_weighted: not case-b");
  check_challenge(secret, challenge, sample.mode());
  auto expanded = expand_weighted(sample, sim);
  std::vector<const BigInt*> values;
  for (const auto& [z, count] : expanded) {
    for (std::uint64_t k = 0; k < count; ++k) values.push_back(&z.value());
  }
  return respond_values(secret, challenge, values, entropy, options);
}

std::uint64_t carrier_score(SessionState& session, const std::vector<AuthResponseEntry>& entries) {
  if (!session.try_consume()) throw SessionError("carrier_score: session already consumed");
  if (entries.empty()) throw ProtocolError("carrier_score: no response entries");
  const auto& pk = session.profile().pk;
  const BigInt& n2 = pk.n_squared;
  for (const auto& e : entries) {
    if (!is_unit(e.cj, n2) || !is_unit(e.upsilon, n2) || !is_unit(e.rho, n2)) {
      throw ProtocolError("carrier_score: entry value is not a unit mod n^2");
    }
  }
  const BigInt exponent = pk.n * session.theta();
  std::uint64_t matches = 0;
  for (const auto& e : entries) {
    BigInt combined = reduce(BigInt(e.cj * pow_mod(e.upsilon, exponent, n2)), n2);
    if (combined == pow_mod(e.rho, exponent, n2)) ++matches;
  }
  spdlog::debug("session {}: {} of {} entries recognized", session.id(), matches, entries.size());
  return matches;
}

AuthDecision decide(std::uint64_t match_count, const ProfileMeta& meta,
                    std::uint64_t profile_size, std::uint64_t sample_size,
                    std::uint64_t threshold) {
  if (threshold == 0) throw std::invalid_argument("decide: threshold must be positive");
  AuthDecision out;
  out.match_count = match_count;
  out.mode = meta.mode;
  if (meta.mode == Mode::kCaseC) {
    if (match_count > profile_size || match_count > sample_size) {
      throw ProtocolError("decide: match count exceeds set sizes (negative L1)");
    }
    const std::uint64_t l1 = profile_size + sample_size - 2 * match_count;
    out.dissimilarity = Dissimilarity::ratio(l1, 1);
    out.accepted = l1 <= threshold;
    return out;
  }
  out.dissimilarity = match_count == 0 ? Dissimilarity::infinite() : Dissimilarity::ratio(1, match_count);
  out.accepted = match_count >= threshold;
  return out;
}

}  // namespace ppia
