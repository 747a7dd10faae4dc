// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ppia/entropy.hpp"
#include "ppia/profile_codec.hpp"
#include "ppia/wire.hpp"

namespace ppia::testing {

/// Distinct features with exactly-`bits` random magnitude (plus one, so >= 1).
inline std::vector<FeatureValue> random_features(std::size_t count, Entropy& entropy,
                                                 std::size_t bits = 128) {
  std::vector<FeatureValue> out;
  while (out.size() < count) {
    auto v = FeatureValue::of(BigInt(entropy.random_bits(bits) + 1));
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

inline std::vector<mpz_class> plain(const std::vector<FeatureValue>& values) {
  std::vector<mpz_class> out;
  for (const auto& v : values) out.push_back(v.value());
  return out;
}

/// Direct evaluation of r'_0 * prod_k r'_k^(a^k) mod n^2 with the raw integer
/// powers a^k; no Horner, no reduction of the exponent.
inline mpz_class blinding_product(const std::vector<mpz_class>& r_primes, const mpz_class& root,
                                  const mpz_class& n_squared) {
  mpz_class acc = r_primes[0] % n_squared;
  mpz_class power = 1;
  for (std::size_t k = 1; k < r_primes.size(); ++k) {
    power *= root;
    mpz_class term;
    mpz_powm(term.get_mpz_t(), r_primes[k].get_mpz_t(), power.get_mpz_t(), n_squared.get_mpz_t());
    acc = (acc * term) % n_squared;
  }
  return acc;
}

inline bool blinding_equation_holds(const std::vector<mpz_class>& r_primes, const mpz_class& r_prime,
                                    const std::vector<mpz_class>& roots, const mpz_class& n_squared) {
  return std::all_of(roots.begin(), roots.end(), [&](const mpz_class& a) {
    return blinding_product(r_primes, a, n_squared) == r_prime % n_squared;
  });
}

/// Structurally valid random message of any type. Values are random integers,
/// not protocol outputs; the codec does not care.
inline wire::Message random_message(Entropy& entropy) {
  auto integer = [&](std::size_t max_bits = 256) {
    return BigInt(entropy.random_bits(1 + entropy.below(std::uint64_t{max_bits})));
  };
  auto text = [&](std::size_t max_len) {
    std::string out(entropy.below(std::uint64_t{max_len} + 1), 'a');
    for (auto& c : out) c = static_cast<char>('a' + entropy.below(std::uint64_t{26}));
    return out;
  };
  auto meta = [&]() {
    ProfileMeta m{static_cast<Mode>(1 + entropy.below(std::uint64_t{3})), std::nullopt};
    if (m.mode == Mode::kCaseC) {
      m.numeric = NumericParams{1 + static_cast<std::uint32_t>(entropy.below(std::uint64_t{50})),
                                1 + static_cast<std::uint32_t>(entropy.below(std::uint64_t{50}))};
    }
    return m;
  };
  auto key = [&]() {
    BigInt n = integer(128);
    n = n * 2 + 17;
    return paillier::PublicKey::from_modulus(n);
  };
  auto units = [&](const BigInt& n2, std::size_t count) {
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(entropy.unit(n2));
    return out;
  };
  switch (entropy.below(std::uint64_t{7})) {
    case 0: {
      auto pk = key();
      const std::size_t s = 1 + entropy.below(std::uint64_t{8});
      EncryptedProfile profile;
      profile.pk = pk;
      for (auto& v : units(pk.n_squared, s + 1)) profile.enc_coeffs.push_back(paillier::Ciphertext{v});
      profile.blinded_r = units(pk.n_squared, s + 1);
      profile.size = s;
      profile.meta = meta();
      profile.threshold = 1 + entropy.below(std::uint64_t{100});
      return wire::StoreProfile{text(32) + "u", profile};
    }
    case 1:
      return wire::StoreAck{};
    case 2:
      return wire::AuthInit{text(256), entropy.next_u64()};
    case 3: {
      auto pk = key();
      const std::size_t s = 1 + entropy.below(std::uint64_t{8});
      return wire::Challenge{AuthChallenge{text(32), pk, units(pk.n_squared, s + 1),
                                           units(pk.n_squared, s + 1), meta()}};
    }
    case 4: {
      wire::Response response{text(32), {}};
      const std::size_t t = 1 + entropy.below(std::uint64_t{20});
      for (std::size_t j = 0; j < t; ++j) {
        response.entries.push_back(AuthResponseEntry{integer(), integer(), integer()});
      }
      return response;
    }
    case 5: {
      AuthDecision d;
      d.match_count = entropy.below(std::uint64_t{1000});
      d.dissimilarity = entropy.below(std::uint64_t{4}) == 0
                            ? Dissimilarity::infinite()
                            : Dissimilarity::ratio(entropy.below(std::uint64_t{1000}),
                                                   1 + entropy.below(std::uint64_t{1000}));
      d.accepted = entropy.below(std::uint64_t{2}) == 1;
      d.mode = static_cast<Mode>(1 + entropy.below(std::uint64_t{3}));
      return wire::Result{d};
    }
    default:
      return wire::Error{static_cast<wire::ErrorCode>(1 + entropy.below(std::uint64_t{4})), text(64)};
  }
}

}  // namespace ppia::testing
