// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#include "ppia/bigint.hpp"

#include <stdexcept>

namespace ppia {

std::vector<std::uint8_t> to_bytes(const BigInt& value) {
  if (sgn(value) < 0) throw std::invalid_argument("to_bytes: negative integer");
  if (sgn(value) == 0) return {};
  std::size_t count = (mpz_sizeinbase(value.get_mpz_t(), 2) + 7) / 8;
  std::vector<std::uint8_t> out(count);
  std::size_t written = 0;
  mpz_export(out.data(), &written, 1, 1, 1, 0, value.get_mpz_t());
  out.resize(written);
  return out;
}

BigInt from_bytes(std::span<const std::uint8_t> bytes) {
  BigInt out;
  if (!bytes.empty()) {
    mpz_import(out.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  }
  return out;
}

BigInt pow_mod(const BigInt& base, const BigInt& exp, const BigInt& mod) {
  if (sgn(exp) < 0) throw std::invalid_argument("pow_mod: negative exponent");
  BigInt out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return out;
}

BigInt inverse_mod(const BigInt& value, const BigInt& mod) {
  BigInt out;
  if (mpz_invert(out.get_mpz_t(), value.get_mpz_t(), mod.get_mpz_t()) == 0) {
    throw std::domain_error("inverse_mod: value is not invertible");
  }
  return out;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

BigInt reduce(const BigInt& value, const BigInt& mod) {
  BigInt out;
  mpz_mod(out.get_mpz_t(), value.get_mpz_t(), mod.get_mpz_t());
  return out;
}

bool is_unit(const BigInt& value, const BigInt& mod) {
  if (sgn(value) <= 0 || value >= mod) return false;
  return gcd(value, mod) == 1;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

void wipe(BigInt& value) {
  mpz_ptr raw = value.get_mpz_t();
  std::size_t limbs = mpz_size(raw);
  if (limbs > 0) {
    mp_limb_t* data = mpz_limbs_modify(raw, static_cast<mp_size_t>(limbs));
    volatile mp_limb_t* cursor = data;
    for (std::size_t i = 0; i < limbs; ++i) cursor[i] = 0;
  }
  value = 0;
}

}  // namespace ppia
