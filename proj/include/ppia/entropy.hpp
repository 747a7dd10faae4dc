// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ppia/bigint.hpp"

namespace ppia {

/// ChaCha20 keystream used as the randomness source for every protocol step.
///
/// `from_os()` keys the stream from the operating system and is what
/// production code uses. `from_seed()` is the deterministic test mode: two
/// streams built from the same seed produce identical draws, which is what
/// makes seeded protocol runs reproducible across processes.
///
/// An Entropy object is not thread-safe; give each session (or worker) its
/// own stream, e.g. via `fork()`.
class Entropy {
 public:
  using Key = std::array<std::uint8_t, 32>;

  static Entropy from_os();
  static Entropy from_seed(std::uint64_t seed);
  static Entropy from_key(const Key& key);

  void fill(std::span<std::uint8_t> out);
  std::vector<std::uint8_t> bytes(std::size_t count);

  std::uint64_t next_u64();
  /// Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  BigInt random_bits(std::size_t bits);
  /// Uniform in [0, bound) by rejection sampling.
  BigInt below(const BigInt& bound);
  /// Uniform in [low, high).
  BigInt in_range(const BigInt& low, const BigInt& high);
  /// Uniform over the units of Z_mod, i.e. [1, mod) coprime to mod.
  BigInt unit(const BigInt& mod);

  /// Independent child stream keyed from this one.
  Entropy fork();

  /// Fisher-Yates with this stream; same seed gives the same permutation.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(static_cast<std::uint64_t>(i)));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  explicit Entropy(const Key& key);
  void refill();

  Key key_{};
  std::uint64_t block_ = 0;
  std::array<std::uint8_t, 64> buffer_{};
  std::size_t used_ = 64;
};

}  // namespace ppia
