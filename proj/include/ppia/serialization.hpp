// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ppia/bigint.hpp"
#include "ppia/paillier.hpp"
#include "ppia/profile_codec.hpp"

namespace ppia {

/// Malformed or truncated input; `position` is the byte offset of the fault.
class DecodeError : public std::runtime_error {
 public:
  DecodeError(std::size_t position, const std::string& what);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

inline constexpr std::size_t kMaxUserIdBytes = 256;

/// Canonical encoder: integers are a 4-byte big-endian length followed by the
/// big-endian magnitude; sequences carry a 4-byte count.
class ByteWriter {
 public:
  void u8(std::uint8_t value) { out_.push_back(value); }
  void u32(std::uint32_t value);
  void integer(const BigInt& value);
  void integer(std::uint64_t value);
  void blob(std::span<const std::uint8_t> bytes);
  void text(std::string_view value);
  void integers(const std::vector<BigInt>& values);

  const std::vector<std::uint8_t>& bytes() const { return out_; }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data, std::size_t base_offset = 0)
      : data_(data), base_(base_offset) {}

  std::uint8_t u8();
  std::uint32_t u32();
  BigInt integer();
  std::uint64_t integer_u64();
  std::vector<std::uint8_t> blob();
  std::string text(std::size_t max_bytes);
  std::string user_id();
  std::vector<BigInt> integers();
  /// Count prefix of a sequence whose items are at least `min_item_bytes`.
  std::uint32_t count(std::size_t min_item_bytes);

  std::size_t position() const { return base_ + pos_; }
  bool at_end() const { return pos_ == data_.size(); }
  void expect_end() const;
  [[noreturn]] void fail(const std::string& what) const;

 private:
  std::span<const std::uint8_t> take(std::size_t count);
  std::span<const std::uint8_t> data_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

bool is_valid_utf8(std::string_view text);

void write_public_key(ByteWriter& w, const paillier::PublicKey& pk);
paillier::PublicKey read_public_key(ByteReader& r);
void write_meta(ByteWriter& w, const ProfileMeta& meta);
ProfileMeta read_meta(ByteReader& r);

void write_profile(ByteWriter& w, const EncryptedProfile& profile);
EncryptedProfile read_profile(ByteReader& r);

std::vector<std::uint8_t> serialize_profile(const EncryptedProfile& profile);
EncryptedProfile deserialize_profile(std::span<const std::uint8_t> bytes);

/// Field order: user id, d, R', mode metadata.
std::vector<std::uint8_t> serialize_secret(const DeviceSecret& secret);
DeviceSecret deserialize_secret(std::span<const std::uint8_t> bytes);

}  // namespace ppia
