// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ppia/bigint.hpp"
#include "ppia/entropy.hpp"
#include "ppia/paillier.hpp"

namespace ppia {

/// Dissimilarity family. The numeric values are the on-disk/wire tags.
enum class Mode : std::uint8_t {
  kCaseA = 0x01,  // independent nominal values, score |X ∩ Y|
  kCaseB = 0x02,  // correlated values, weighted similarity sum
  kCaseC = 0x03,  // numeric vectors, L1 through unary pair encoding
};

const char* to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// Public Case C parameters: t features, each in [0, cap].
struct NumericParams {
  std::uint32_t features = 0;
  std::uint32_t cap = 0;

  bool operator==(const NumericParams&) const = default;
};

struct ProfileMeta {
  Mode mode = Mode::kCaseA;
  std::optional<NumericParams> numeric;  // present iff mode == kCaseC

  bool operator==(const ProfileMeta&) const = default;
};

/// Integer feature in [1, 2^128].
class FeatureValue {
 public:
  static FeatureValue of(const BigInt& value);
  static FeatureValue of(std::uint64_t value) { return of(BigInt(static_cast<unsigned long>(value))); }

  const BigInt& value() const { return value_; }

  friend bool operator==(const FeatureValue& a, const FeatureValue& b) { return a.value_ == b.value_; }
  friend bool operator<(const FeatureValue& a, const FeatureValue& b) { return a.value_ < b.value_; }

 private:
  explicit FeatureValue(BigInt value) : value_(std::move(value)) {}
  BigInt value_;
};

const BigInt& feature_upper_bound();  // 2^128

/// A nonempty set of pairwise distinct features, kept sorted ascending so that
/// everything derived from it is independent of input order.
class FeatureSet {
 public:
  static FeatureSet make(ProfileMeta meta, std::vector<FeatureValue> values);

  const ProfileMeta& meta() const { return meta_; }
  Mode mode() const { return meta_.mode; }
  const std::vector<FeatureValue>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  std::vector<BigInt> integers() const;

 private:
  FeatureSet(ProfileMeta meta, std::vector<FeatureValue> values)
      : meta_(std::move(meta)), values_(std::move(values)) {}
  ProfileMeta meta_;
  std::vector<FeatureValue> values_;
};

/// Carrier-side record. Holds only ciphertexts and blinded values.
struct EncryptedProfile {
  paillier::PublicKey pk;
  std::vector<paillier::Ciphertext> enc_coeffs;  // Enc(p_0) ... Enc(p_s)
  std::vector<BigInt> blinded_r;                 // R_0^d ... R_s^d mod n^2
  std::uint64_t size = 0;                        // s
  ProfileMeta meta;
  std::uint64_t threshold = 1;

  bool operator==(const EncryptedProfile&) const = default;
};

/// Everything the device keeps after set-up.
struct DeviceSecret {
  std::string user_id;
  BigInt d;
  BigInt r_prime;  // R'
  ProfileMeta meta;

  bool operator==(const DeviceSecret&) const = default;
};

enum class Solver : std::uint8_t { kClosedForm, kGaussian };
const char* to_string(Solver solver);
Solver parse_solver(std::string_view text);

/// Randomizers r'_0..r'_s with r'_0 * prod_k r'_k^(a^k) = R' (mod n^2) at
/// every profile root a.
struct BlindingSolution {
  std::vector<BigInt> r_primes;
  BigInt r_prime;
  Solver solver = Solver::kClosedForm;
};

/// Coefficients p_0..p_s of prod (x - root) reduced into [0, modulus).
/// Throws on an empty root list or roots that collide modulo `modulus`.
std::vector<BigInt> poly_from_roots(std::span<const BigInt> roots, const BigInt& modulus);

/// Closed-form blinding: r'_k = w^(-c' P_k) for k >= 1 and
/// r'_0 = R' * w^(-c' P_0), where P_k are the coefficients of the profile
/// polynomial modulo the group exponent n*lambda. The blinding exponents then
/// sum to c'*(P_0 - P(a)) = c'*P_0 at every root a.
BlindingSolution solve_blinding(std::span<const BigInt> roots, const BigInt& r_prime,
                                const paillier::PublicKey& pk, const paillier::SecretKey& sk,
                                Entropy& entropy);

/// Deterministic core of solve_blinding. c_prime must be nonzero modulo the
/// group exponent (zero gives the excluded trivial solution).
BlindingSolution solve_blinding_with(std::span<const BigInt> roots, const BigInt& r_prime,
                                     const paillier::PublicKey& pk, const paillier::SecretKey& sk,
                                     const BigInt& base, const BigInt& c_prime);

/// Integer solution of V * x = det(V) * 1 for the generalized Vandermonde
/// matrix V[j][k] = root_j^(k+1), by fraction-free (Bareiss) elimination.
struct VandermondeSolution {
  BigInt determinant;
  std::vector<BigInt> scaled_solution;  // adj(V) * 1
};
std::optional<VandermondeSolution> solve_vandermonde(std::span<const BigInt> roots);

/// Elimination-based blinding: solves the Vandermonde system for a random
/// target, draws r'_0 at random and derives R'. Falls back to the closed form
/// (logged) on a singular system.
BlindingSolution solve_blinding_gaussian(std::span<const BigInt> roots,
                                         const paillier::PublicKey& pk,
                                         const paillier::SecretKey& sk, Entropy& entropy);

struct SetupOptions {
  Solver solver = Solver::kClosedForm;
  std::optional<std::uint64_t> threshold;
};

/// Read-only view of set-up state handed to an observer just before it is
/// wiped. Only tests and audits install an observer.
struct SetupIntermediates {
  const paillier::Keypair& keys;
  const std::vector<BigInt>& roots;
  const std::vector<BigInt>& coeffs;
  const std::vector<paillier::Encryption>& encryptions;
  const BlindingSolution& blinding;
  const std::vector<BigInt>& randomizer_ratios;  // R_i = r'_i / r_i
  const BigInt& d;
};
using SetupObserver = std::function<void(const SetupIntermediates&)>;

struct SetupResult {
  EncryptedProfile profile;
  DeviceSecret secret;
};

SetupResult build_encrypted_profile(const std::string& user_id, const FeatureSet& features,
                                    unsigned bits, Entropy& entropy,
                                    const SetupOptions& options = {},
                                    const SetupObserver& observer = {});

/// Same, with a caller-generated key. The key is consumed and wiped.
SetupResult build_encrypted_profile(const std::string& user_id, const FeatureSet& features,
                                    paillier::Keypair keys, Entropy& entropy,
                                    const SetupOptions& options = {},
                                    const SetupObserver& observer = {});

std::uint64_t default_threshold(const ProfileMeta& meta, std::uint64_t profile_size);

/// Unary pair encoding: (i, j) with 1 <= j <= u_i becomes (i-1)*cap + j.
FeatureSet encode_numeric(std::span<const std::uint64_t> vector, std::uint32_t cap);
std::vector<std::uint64_t> decode_numeric(const FeatureSet& encoded);

/// BLAKE2b-128 digest as an integer in [1, 2^128] (zero maps to 2^128).
FeatureValue hash_feature(std::span<const std::uint8_t> raw);
FeatureValue hash_feature(std::string_view raw);

}  // namespace ppia
