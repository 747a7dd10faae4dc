// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#include "ppia/entropy.hpp"

#include <sodium.h>

#include <algorithm>
#include <stdexcept>

namespace ppia {
namespace {

void ensure_sodium() {
  static const int status = sodium_init();
  if (status < 0) throw std::runtime_error("entropy: libsodium initialisation failed");
}

}  // namespace

Entropy::Entropy(const Key& key) : key_(key) { ensure_sodium(); }

Entropy Entropy::from_os() {
  ensure_sodium();
  Key key;
  randombytes_buf(key.data(), key.size());
  return Entropy(key);
}

Entropy Entropy::from_seed(std::uint64_t seed) {
  ensure_sodium();
  Key key{};
  std::array<std::uint8_t, randombytes_SEEDBYTES> material{};
  for (int i = 0; i < 8; ++i) material[i] = static_cast<std::uint8_t>(seed >> (8 * (7 - i)));
  randombytes_buf_deterministic(key.data(), key.size(), material.data());
  return Entropy(key);
}

Entropy Entropy::from_key(const Key& key) { return Entropy(key); }

void Entropy::refill() {
  static constexpr std::array<std::uint8_t, crypto_stream_chacha20_NONCEBYTES> kNonce{};
  std::array<std::uint8_t, 64> zeros{};
  if (crypto_stream_chacha20_xor_ic(buffer_.data(), zeros.data(), zeros.size(), kNonce.data(),
                                    block_, key_.data()) != 0) {
    throw std::runtime_error("entropy: keystream generation failed");
  }
  ++block_;
  used_ = 0;
}

void Entropy::fill(std::span<std::uint8_t> out) {
  std::size_t pos = 0;
  while (pos < out.size()) {
    if (used_ == buffer_.size()) refill();
    std::size_t take = std::min(out.size() - pos, buffer_.size() - used_);
    std::copy_n(buffer_.begin() + static_cast<std::ptrdiff_t>(used_), take,
                out.begin() + static_cast<std::ptrdiff_t>(pos));
    used_ += take;
    pos += take;
  }
}

std::vector<std::uint8_t> Entropy::bytes(std::size_t count) {
  std::vector<std::uint8_t> out(count);
  fill(out);
  return out;
}

std::uint64_t Entropy::next_u64() {
  std::array<std::uint8_t, 8> raw{};
  fill(raw);
  std::uint64_t out = 0;
  for (std::uint8_t b : raw) out = (out << 8) | b;
  return out;
}

std::uint64_t Entropy::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("entropy: empty range");
  // Reject the tail that would bias the modulo.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  for (;;) {
    std::uint64_t x = next_u64();
    if (x < limit) return x % bound;
  }
}

BigInt Entropy::random_bits(std::size_t bits) {
  if (bits == 0) return 0;
  auto raw = bytes((bits + 7) / 8);
  std::size_t excess = raw.size() * 8 - bits;
  raw[0] &= static_cast<std::uint8_t>(0xff >> excess);
  return from_bytes(raw);
}

BigInt Entropy::below(const BigInt& bound) {
  if (sgn(bound) <= 0) throw std::invalid_argument("entropy: empty range");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  for (;;) {
    BigInt x = random_bits(bits);
    if (x < bound) return x;
  }
}

BigInt Entropy::in_range(const BigInt& low, const BigInt& high) {
  if (high <= low) throw std::invalid_argument("entropy: empty range");
  return low + below(BigInt(high - low));
}

BigInt Entropy::unit(const BigInt& mod) {
  if (mod < 2) throw std::invalid_argument("entropy: modulus must be at least 2");
  for (int attempt = 0; attempt < 10000; ++attempt) {
    BigInt x = in_range(1, mod);
    if (gcd(x, mod) == 1) return x;
  }
  throw std::runtime_error("entropy: no unit found within retry budget");
}

Entropy Entropy::fork() {
  Key child;
  fill(child);
  return Entropy(child);
}

}  // namespace ppia
