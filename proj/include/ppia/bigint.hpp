// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ppia {

using BigInt = mpz_class;

/// Big-endian magnitude bytes of a nonnegative integer. Zero yields an empty
/// vector.
std::vector<std::uint8_t> to_bytes(const BigInt& value);
BigInt from_bytes(std::span<const std::uint8_t> bytes);

BigInt pow_mod(const BigInt& base, const BigInt& exp, const BigInt& mod);
BigInt inverse_mod(const BigInt& value, const BigInt& mod);
BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

/// Least nonnegative residue, also for negative inputs.
BigInt reduce(const BigInt& value, const BigInt& mod);

bool is_unit(const BigInt& value, const BigInt& mod);

std::string to_hex(std::span<const std::uint8_t> bytes);

// Overwrites the limbs before releasing them. Used for set-up intermediates.
void wipe(BigInt& value);

}  // namespace ppia
