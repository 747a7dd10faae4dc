// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#include "ppia/wire.hpp"

namespace ppia::wire {
namespace {

void write_challenge(ByteWriter& w, const AuthChallenge& c) {
  w.text(c.session_id);
  write_public_key(w, c.pk);
  w.integers(c.powered_coeffs);
  w.integers(c.blinded_r);
  write_meta(w, c.meta);
}

AuthChallenge read_challenge(ByteReader& r) {
  AuthChallenge c;
  c.session_id = r.text(kMaxUserIdBytes);
  c.pk = read_public_key(r);
  const std::size_t seq_at = r.position();
  c.powered_coeffs = r.integers();
  c.blinded_r = r.integers();
  if (c.powered_coeffs.size() != c.blinded_r.size()) {
    throw DecodeError(seq_at, "challenge sequences differ in length");
  }
  c.meta = read_meta(r);
  return c;
}

void write_decision(ByteWriter& w, const AuthDecision& d) {
  w.u8(static_cast<std::uint8_t>(d.mode));
  w.integer(d.match_count);
  w.u8(d.dissimilarity.is_infinite() ? 1 : 0);
  w.integer(d.dissimilarity.numerator());
  w.integer(d.dissimilarity.denominator());
  w.u8(d.accepted ? 1 : 0);
}

std::uint8_t read_flag(ByteReader& r) {
  const std::size_t at = r.position();
  const std::uint8_t v = r.u8();
  if (v > 1) throw DecodeError(at, "flag byte must be 0 or 1");
  return v;
}

AuthDecision read_decision(ByteReader& r) {
  const std::size_t start = r.position();
  AuthDecision d;
  const std::uint8_t mode = r.u8();
  if (mode < 0x01 || mode > 0x03) throw DecodeError(start, "unknown mode tag");
  d.mode = static_cast<Mode>(mode);
  d.match_count = r.integer_u64();
  const bool infinite = read_flag(r) == 1;
  const std::size_t ratio_at = r.position();
  const std::uint64_t num = r.integer_u64();
  const std::uint64_t den = r.integer_u64();
  if (infinite) {
    d.dissimilarity = Dissimilarity::infinite();
  } else {
    if (den == 0) throw DecodeError(ratio_at, "zero denominator");
    d.dissimilarity = Dissimilarity::ratio(num, den);
  }
  d.accepted = read_flag(r) == 1;
  return d;
}

}  // namespace

MessageType type_of(const Message& message) {
  struct Visitor {
    MessageType operator()(const StoreProfile&) const { return MessageType::kStoreProfile; }
    MessageType operator()(const StoreAck&) const { return MessageType::kStoreAck; }
    MessageType operator()(const AuthInit&) const { return MessageType::kAuthInit; }
    MessageType operator()(const Challenge&) const { return MessageType::kChallenge; }
    MessageType operator()(const Response&) const { return MessageType::kResponse; }
    MessageType operator()(const Result&) const { return MessageType::kResult; }
    MessageType operator()(const Error&) const { return MessageType::kError; }
  };
  return std::visit(Visitor{}, message);
}

FrameHeader decode_header(std::span<const std::uint8_t, kHeaderBytes> raw) {
  FrameHeader h;
  h.version = raw[0];
  if (h.version != kVersion) throw DecodeError(0, "unsupported frame version");
  const std::uint8_t type = raw[1];
  if (!((type >= 0x01 && type <= 0x06) || type == 0x7F)) throw DecodeError(1, "unknown message type");
  h.type = static_cast<MessageType>(type);
  h.payload_length = (std::uint32_t{raw[2]} << 24) | (std::uint32_t{raw[3]} << 16) |
                     (std::uint32_t{raw[4]} << 8) | std::uint32_t{raw[5]};
  if (h.payload_length > kMaxPayloadBytes) throw DecodeError(2, "payload exceeds 64 MiB");
  return h;
}

std::vector<std::uint8_t> encode_payload(const Message& message) {
  ByteWriter w;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, StoreProfile>) {
          w.text(m.user_id);
          write_profile(w, m.profile);
        } else if constexpr (std::is_same_v<T, AuthInit>) {
          w.text(m.user_id);
          w.integer(m.sample_size);
        } else if constexpr (std::is_same_v<T, Challenge>) {
          write_challenge(w, m.challenge);
        } else if constexpr (std::is_same_v<T, Response>) {
          w.text(m.session_id);
          w.u32(static_cast<std::uint32_t>(m.entries.size()));
          for (const auto& e : m.entries) {
            w.integer(e.cj);
            w.integer(e.upsilon);
            w.integer(e.rho);
          }
        } else if constexpr (std::is_same_v<T, Result>) {
          write_decision(w, m.decision);
        } else if constexpr (std::is_same_v<T, Error>) {
          w.u8(static_cast<std::uint8_t>(m.code));
          w.text(m.text);
        }
      },
      message);
  return w.take();
}

Message decode_payload(MessageType type, std::span<const std::uint8_t> payload) {
  ByteReader r(payload, kHeaderBytes);
  Message out;
  switch (type) {
    case MessageType::kStoreProfile: {
      StoreProfile m;
      m.user_id = r.user_id();
      m.profile = read_profile(r);
      out = std::move(m);
      break;
    }
    case MessageType::kStoreAck:
      out = StoreAck{};
      break;
    case MessageType::kAuthInit: {
      AuthInit m;
      m.user_id = r.user_id();
      m.sample_size = r.integer_u64();
      out = std::move(m);
      break;
    }
    case MessageType::kChallenge:
      out = Challenge{read_challenge(r)};
      break;
    case MessageType::kResponse: {
      Response m;
      m.session_id = r.text(kMaxUserIdBytes);
      const std::uint32_t n = r.count(12);
      m.entries.reserve(n);
      for (std::uint32_t i = 0; i < n; ++i) {
        AuthResponseEntry e;
        e.cj = r.integer();
        e.upsilon = r.integer();
        e.rho = r.integer();
        m.entries.push_back(std::move(e));
      }
      out = std::move(m);
      break;
    }
    case MessageType::kResult:
      out = Result{read_decision(r)};
      break;
    case MessageType::kError: {
      Error m;
      const std::size_t at = r.position();
      const std::uint8_t code = r.u8();
      if (code < 0x01 || code > 0x04) throw DecodeError(at, "unknown error code");
      m.code = static_cast<ErrorCode>(code);
      m.text = r.text(kMaxPayloadBytes);
      out = std::move(m);
      break;
    }
    default:
      throw DecodeError(1, "unknown message type");
  }
  r.expect_end();
  return out;
}

std::vector<std::uint8_t> encode_frame(const Message& message) {
  auto payload = encode_payload(message);
  if (payload.size() > kMaxPayloadBytes) throw std::length_error("payload exceeds 64 MiB");
  ByteWriter w;
  w.u8(kVersion);
  w.u8(static_cast<std::uint8_t>(type_of(message)));
  w.u32(static_cast<std::uint32_t>(payload.size()));
  auto out = w.take();
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

Message decode_frame(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes) throw DecodeError(bytes.size(), "truncated frame header");
  FrameHeader h = decode_header(bytes.first<kHeaderBytes>());
  const auto payload = bytes.subspan(kHeaderBytes);
  if (payload.size() < h.payload_length) throw DecodeError(bytes.size(), "truncated payload");
  if (payload.size() > h.payload_length) {
    throw DecodeError(kHeaderBytes + h.payload_length, "trailing bytes after frame");
  }
  return decode_payload(h.type, payload);
}

}  // namespace ppia::wire
