// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

#include "ppia/bigint.hpp"
#include "ppia/entropy.hpp"

namespace ppia::paillier {

class MalformedCiphertext : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class KeygenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// n = p*q with generator fixed to g = 1 + n.
struct PublicKey {
  BigInt n;
  BigInt g;
  BigInt n_squared;

  /// Builds g and n^2 from the modulus.
  static PublicKey from_modulus(const BigInt& n);

  bool operator==(const PublicKey& other) const { return n == other.n && g == other.g; }
};

/// lambda = lcm(p-1, q-1) and mu = lambda^-1 mod n.
struct SecretKey {
  BigInt p;
  BigInt q;
  BigInt lambda;
  BigInt mu;

  /// n * lambda: a multiple of the order of every unit mod n^2, so exponents
  /// of such units may be reduced modulo this value.
  BigInt group_exponent() const { return p * q * lambda; }

  void wipe();
};

struct Keypair {
  PublicKey pub;
  SecretKey sec;
};

struct Ciphertext {
  BigInt value;

  bool operator==(const Ciphertext& other) const { return value == other.value; }
};

/// A ciphertext together with the randomizer r used to produce it.
struct Encryption {
  Ciphertext ciphertext;
  BigInt randomizer;
};

inline constexpr unsigned kMinKeyBits = 16;
inline constexpr unsigned kDefaultKeyBits = 1024;
inline constexpr int kPrimalityRounds = 40;

/// Random key whose modulus has exactly `bits` bits.
Keypair keygen(unsigned bits, Entropy& entropy);

/// Opt-in marker for deterministic keys built from caller-chosen primes.
struct InsecureTestMode {
  bool enabled = false;
};

/// Builds a key from fixed primes, e.g. p=3, q=5. Refused unless
/// `mode.enabled` is set.
Keypair keypair_from_primes(const BigInt& p, const BigInt& q, InsecureTestMode mode);

/// Throws MalformedCiphertext unless c is a unit in [1, n^2).
void validate(const PublicKey& pk, const Ciphertext& c);

/// (1 + m*n) * r^n mod n^2 with a caller-supplied unit r.
Ciphertext encrypt(const PublicKey& pk, const BigInt& message, const BigInt& randomizer);
/// Draws r uniformly from the units mod n and returns it with the ciphertext.
Encryption encrypt(const PublicKey& pk, const BigInt& message, Entropy& entropy);

BigInt decrypt(const PublicKey& pk, const SecretKey& sk, const Ciphertext& c);

/// c1 * c2 mod n^2, decrypting to m1 + m2 mod n.
Ciphertext add_cipher(const PublicKey& pk, const Ciphertext& c1, const Ciphertext& c2);

/// c^k mod n^2, decrypting to k*m mod n. k may exceed n.
Ciphertext scalar_pow(const PublicKey& pk, const Ciphertext& c, const BigInt& k);

}  // namespace ppia::paillier
