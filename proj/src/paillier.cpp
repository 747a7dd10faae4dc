// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#include "ppia/paillier.hpp"

namespace ppia::paillier {
namespace {

// Random prime with exactly `bits` bits and its two top bits set, so that the
// product of two such primes has exactly the sum of their bit lengths.
BigInt random_prime(unsigned bits, Entropy& entropy) {
  const unsigned budget = 200 * bits + 1000;
  for (unsigned attempt = 0; attempt < budget; ++attempt) {
    BigInt candidate = entropy.random_bits(bits);
    mpz_setbit(candidate.get_mpz_t(), bits - 1);
    mpz_setbit(candidate.get_mpz_t(), bits - 2);
    mpz_setbit(candidate.get_mpz_t(), 0);
    if (mpz_probab_prime_p(candidate.get_mpz_t(), kPrimalityRounds) != 0) return candidate;
  }
  throw KeygenError("keygen: no prime found within retry budget");
}

Keypair assemble(const BigInt& p, const BigInt& q) {
  Keypair keys;
  keys.pub = PublicKey::from_modulus(p * q);
  keys.sec.p = p;
  keys.sec.q = q;
  keys.sec.lambda = lcm(BigInt(p - 1), BigInt(q - 1));
  keys.sec.mu = inverse_mod(keys.sec.lambda, keys.pub.n);
  return keys;
}

}  // namespace

PublicKey PublicKey::from_modulus(const BigInt& n) {
  if (n < 15) throw std::invalid_argument("paillier: modulus too small");
  return PublicKey{n, BigInt(n + 1), BigInt(n * n)};
}

void SecretKey::wipe() {
  ppia::wipe(p);
  ppia::wipe(q);
  ppia::wipe(lambda);
  ppia::wipe(mu);
}

Keypair keygen(unsigned bits, Entropy& entropy) {
  if (bits < kMinKeyBits) throw std::invalid_argument("keygen: key size below 16 bits");
  const unsigned p_bits = bits - bits / 2;
  const unsigned q_bits = bits / 2;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    BigInt p = random_prime(p_bits, entropy);
    BigInt q = random_prime(q_bits, entropy);
    if (p == q) continue;
    BigInt n = p * q;
    if (gcd(n, BigInt((p - 1) * (q - 1))) != 1) continue;
    if (mpz_sizeinbase(n.get_mpz_t(), 2) != bits) continue;
    return assemble(p, q);
  }
  throw KeygenError("keygen: no valid prime pair within retry budget");
}

Keypair keypair_from_primes(const BigInt& p, const BigInt& q, InsecureTestMode mode) {
  if (!mode.enabled) {
    throw std::logic_error("keypair_from_primes requires insecure test mode");
  }
  if (p == q) throw std::invalid_argument("keypair_from_primes: p and q must differ");
  if (mpz_probab_prime_p(p.get_mpz_t(), kPrimalityRounds) == 0 ||
      mpz_probab_prime_p(q.get_mpz_t(), kPrimalityRounds) == 0 || p < 3 || q < 3) {
    throw std::invalid_argument("keypair_from_primes: p and q must be odd primes");
  }
  if (gcd(BigInt(p * q), BigInt((p - 1) * (q - 1))) != 1) {
    throw std::invalid_argument("keypair_from_primes: gcd(n, phi(n)) != 1");
  }
  return assemble(p, q);
}

void validate(const PublicKey& pk, const Ciphertext& c) {
  if (!is_unit(c.value, pk.n_squared)) {
    throw MalformedCiphertext("ciphertext is not a unit modulo n^2");
  }
}

Ciphertext encrypt(const PublicKey& pk, const BigInt& message, const BigInt& randomizer) {
  if (sgn(message) < 0 || message >= pk.n) {
    throw std::invalid_argument("encrypt: message outside [0, n)");
  }
  if (!is_unit(randomizer, pk.n)) {
    throw std::invalid_argument("encrypt: randomizer is not a unit mod n");
  }
  // g^m = (1+n)^m = 1 + m*n (mod n^2).
  BigInt gm = reduce(BigInt(1 + message * pk.n), pk.n_squared);
  return Ciphertext{reduce(BigInt(gm * pow_mod(randomizer, pk.n, pk.n_squared)), pk.n_squared)};
}

Encryption encrypt(const PublicKey& pk, const BigInt& message, Entropy& entropy) {
  BigInt r = entropy.unit(pk.n);
  Ciphertext c = encrypt(pk, message, r);
  return Encryption{std::move(c), std::move(r)};
}

BigInt decrypt(const PublicKey& pk, const SecretKey& sk, const Ciphertext& c) {
  validate(pk, c);
  BigInt u = pow_mod(c.value, sk.lambda, pk.n_squared);
  BigInt numerator = u - 1;
  if (!mpz_divisible_p(numerator.get_mpz_t(), pk.n.get_mpz_t())) {
    throw MalformedCiphertext("decrypt: c^lambda - 1 is not divisible by n");
  }
  BigInt l_value;
  mpz_divexact(l_value.get_mpz_t(), numerator.get_mpz_t(), pk.n.get_mpz_t());
  return reduce(BigInt(l_value * sk.mu), pk.n);
}

Ciphertext add_cipher(const PublicKey& pk, const Ciphertext& c1, const Ciphertext& c2) {
  validate(pk, c1);
  validate(pk, c2);
  return Ciphertext{reduce(BigInt(c1.value * c2.value), pk.n_squared)};
}

Ciphertext scalar_pow(const PublicKey& pk, const Ciphertext& c, const BigInt& k) {
  validate(pk, c);
  if (sgn(k) < 0) throw std::invalid_argument("scalar_pow: negative exponent");
  return Ciphertext{pow_mod(c.value, k, pk.n_squared)};
}

}  // namespace ppia::paillier
