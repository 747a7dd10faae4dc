// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#include "ppia/serialization.hpp"

#include <limits>

namespace ppia {

DecodeError::DecodeError(std::size_t position, const std::string& what)
    : std::runtime_error("decode error at byte " + std::to_string(position) + ": " + what),
      position_(position) {}

void ByteWriter::u32(std::uint32_t value) {
  for (int shift = 24; shift >= 0; shift -= 8) out_.push_back(static_cast<std::uint8_t>(value >> shift));
}

void ByteWriter::blob(std::span<const std::uint8_t> bytes) {
  if (bytes.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw std::length_error("field too large to encode");
  }
  u32(static_cast<std::uint32_t>(bytes.size()));
  out_.insert(out_.end(), bytes.begin(), bytes.end());
}

void ByteWriter::integer(const BigInt& value) { blob(to_bytes(value)); }

void ByteWriter::integer(std::uint64_t value) { integer(BigInt(static_cast<unsigned long>(value))); }

void ByteWriter::text(std::string_view value) {
  blob(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(value.data()), value.size()));
}

void ByteWriter::integers(const std::vector<BigInt>& values) {
  u32(static_cast<std::uint32_t>(values.size()));
  for (const auto& v : values) integer(v);
}

void ByteReader::fail(const std::string& what) const { throw DecodeError(position(), what); }

std::span<const std::uint8_t> ByteReader::take(std::size_t count) {
  if (data_.size() - pos_ < count) fail("truncated input");
  auto out = data_.subspan(pos_, count);
  pos_ += count;
  return out;
}

std::uint8_t ByteReader::u8() { return take(1)[0]; }

std::uint32_t ByteReader::u32() {
  auto raw = take(4);
  return (std::uint32_t{raw[0]} << 24) | (std::uint32_t{raw[1]} << 16) |
         (std::uint32_t{raw[2]} << 8) | std::uint32_t{raw[3]};
}

std::vector<std::uint8_t> ByteReader::blob() {
  const std::uint32_t length = u32();
  auto raw = take(length);
  return {raw.begin(), raw.end()};
}

BigInt ByteReader::integer() {
  const std::size_t start = position();
  auto raw = blob();
  if (!raw.empty() && raw.front() == 0) throw DecodeError(start, "non-canonical integer (leading zero)");
  return from_bytes(raw);
}

std::uint64_t ByteReader::integer_u64() {
  const std::size_t start = position();
  BigInt value = integer();
  if (mpz_sizeinbase(value.get_mpz_t(), 2) > 64) throw DecodeError(start, "integer exceeds 64 bits");
  std::uint64_t out = 0;
  for (auto b : to_bytes(value)) out = (out << 8) | b;
  return out;
}

std::string ByteReader::text(std::size_t max_bytes) {
  const std::size_t start = position();
  auto raw = blob();
  if (raw.size() > max_bytes) throw DecodeError(start, "string too long");
  std::string out(raw.begin(), raw.end());
  if (!is_valid_utf8(out)) throw DecodeError(start, "string is not valid UTF-8");
  return out;
}

std::string ByteReader::user_id() {
  const std::size_t start = position();
  std::string id = text(kMaxUserIdBytes);
  if (id.empty()) throw DecodeError(start, "empty user id");
  return id;
}

std::uint32_t ByteReader::count(std::size_t min_item_bytes) {
  const std::size_t start = position();
  const std::uint32_t n = u32();
  if (min_item_bytes > 0 && n > (data_.size() - pos_) / min_item_bytes) {
    throw DecodeError(start, "sequence count exceeds remaining input");
  }
  return n;
}

std::vector<BigInt> ByteReader::integers() {
  const std::uint32_t n = count(4);
  std::vector<BigInt> out;
  out.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(integer());
  return out;
}

void ByteReader::expect_end() const {
  if (!at_end()) throw DecodeError(position(), "trailing bytes");
}

bool is_valid_utf8(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t extra = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xe0) == 0xc0) {
      extra = 1;
      cp = c & 0x1f;
    } else if ((c & 0xf0) == 0xe0) {
      extra = 2;
      cp = c & 0x0f;
    } else if ((c & 0xf8) == 0xf0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= text.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xc0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3f);
    }
    static constexpr std::uint32_t kMinimum[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMinimum[extra] || cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff)) return false;
    i += extra + 1;
  }
  return true;
}

void write_public_key(ByteWriter& w, const paillier::PublicKey& pk) {
  w.integer(pk.n);
  w.integer(pk.g);
}

paillier::PublicKey read_public_key(ByteReader& r) {
  const std::size_t start = r.position();
  BigInt n = r.integer();
  BigInt g = r.integer();
  if (n < 15 || mpz_even_p(n.get_mpz_t())) throw DecodeError(start, "invalid Paillier modulus");
  if (g != n + 1) throw DecodeError(start, "generator must equal n + 1");
  return paillier::PublicKey::from_modulus(n);
}

void write_meta(ByteWriter& w, const ProfileMeta& meta) {
  w.u8(static_cast<std::uint8_t>(meta.mode));
  if (meta.mode == Mode::kCaseC) {
    w.integer(std::uint64_t{meta.numeric->features});
    w.integer(std::uint64_t{meta.numeric->cap});
  }
}

ProfileMeta read_meta(ByteReader& r) {
  const std::size_t start = r.position();
  const std::uint8_t tag = r.u8();
  if (tag < 0x01 || tag > 0x03) throw DecodeError(start, "unknown mode tag");
  ProfileMeta meta{static_cast<Mode>(tag), std::nullopt};
  if (meta.mode == Mode::kCaseC) {
    const std::size_t params_at = r.position();
    std::uint64_t t = r.integer_u64();
    std::uint64_t cap = r.integer_u64();
    if (t == 0 || cap == 0 || t > UINT32_MAX || cap > UINT32_MAX) {
      throw DecodeError(params_at, "invalid case-c parameters");
    }
    meta.numeric = NumericParams{static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(cap)};
  }
  return meta;
}

void write_profile(ByteWriter& w, const EncryptedProfile& profile) {
  write_public_key(w, profile.pk);
  w.u32(static_cast<std::uint32_t>(profile.enc_coeffs.size()));
  for (const auto& c : profile.enc_coeffs) w.integer(c.value);
  w.integers(profile.blinded_r);
  w.integer(profile.size);
  write_meta(w, profile.meta);
  w.integer(profile.threshold);
}

EncryptedProfile read_profile(ByteReader& r) {
  const std::size_t start = r.position();
  EncryptedProfile profile;
  profile.pk = read_public_key(r);
  for (auto& v : r.integers()) profile.enc_coeffs.push_back(paillier::Ciphertext{std::move(v)});
  profile.blinded_r = r.integers();
  profile.size = r.integer_u64();
  profile.meta = read_meta(r);
  profile.threshold = r.integer_u64();
  if (profile.size == 0 || profile.enc_coeffs.size() != profile.size + 1 ||
      profile.blinded_r.size() != profile.size + 1) {
    throw DecodeError(start, "profile sequence lengths do not match s + 1");
  }
  if (profile.threshold == 0) throw DecodeError(start, "threshold must be positive");
  for (const auto& c : profile.enc_coeffs) {
    if (!is_unit(c.value, profile.pk.n_squared)) throw DecodeError(start, "coefficient ciphertext is not a unit");
  }
  for (const auto& v : profile.blinded_r) {
    if (!is_unit(v, profile.pk.n_squared)) throw DecodeError(start, "blinded randomizer is not a unit");
  }
  return profile;
}

std::vector<std::uint8_t> serialize_profile(const EncryptedProfile& profile) {
  ByteWriter w;
  write_profile(w, profile);
  return w.take();
}

EncryptedProfile deserialize_profile(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  EncryptedProfile profile = read_profile(r);
  r.expect_end();
  return profile;
}

std::vector<std::uint8_t> serialize_secret(const DeviceSecret& secret) {
  ByteWriter w;
  w.text(secret.user_id);
  w.integer(secret.d);
  w.integer(secret.r_prime);
  write_meta(w, secret.meta);
  return w.take();
}

DeviceSecret deserialize_secret(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  DeviceSecret secret;
  secret.user_id = r.user_id();
  secret.d = r.integer();
  secret.r_prime = r.integer();
  secret.meta = read_meta(r);
  r.expect_end();
  if (secret.d < 1 || secret.r_prime < 1) throw DecodeError(0, "device secret values must be positive");
  return secret;
}

}  // namespace ppia
