// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ppia/auth_core.hpp"
#include "ppia/profile_codec.hpp"
#include "ppia/serialization.hpp"

namespace ppia::wire {

// Frame: version (1) | type (1) | payload length (4, big-endian) | payload.
inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::size_t kHeaderBytes = 6;
inline constexpr std::uint32_t kMaxPayloadBytes = 64u << 20;

enum class MessageType : std::uint8_t {
  kStoreProfile = 0x01,
  kStoreAck = 0x02,
  kAuthInit = 0x03,
  kChallenge = 0x04,
  kResponse = 0x05,
  kResult = 0x06,
  kError = 0x7F,
};

enum class ErrorCode : std::uint8_t {
  kUnknownUser = 0x01,
  kSession = 0x02,  // unknown, expired or consumed
  kDecode = 0x03,
  kRejected = 0x04,  // well-formed request refused by the protocol
};

struct StoreProfile {
  std::string user_id;
  EncryptedProfile profile;
  bool operator==(const StoreProfile&) const = default;
};

struct StoreAck {
  bool operator==(const StoreAck&) const = default;
};

struct AuthInit {
  std::string user_id;
  std::uint64_t sample_size = 0;
  bool operator==(const AuthInit&) const = default;
};

struct Challenge {
  AuthChallenge challenge;
  bool operator==(const Challenge&) const = default;
};

struct Response {
  std::string session_id;
  std::vector<AuthResponseEntry> entries;
  bool operator==(const Response&) const = default;
};

struct Result {
  AuthDecision decision;
  bool operator==(const Result&) const = default;
};

struct Error {
  ErrorCode code = ErrorCode::kDecode;
  std::string text;
  bool operator==(const Error&) const = default;
};

using Message = std::variant<StoreProfile, StoreAck, AuthInit, Challenge, Response, Result, Error>;

MessageType type_of(const Message& message);

struct FrameHeader {
  std::uint8_t version = kVersion;
  MessageType type = MessageType::kStoreAck;
  std::uint32_t payload_length = 0;
};

/// Validates version, type and length bound.
FrameHeader decode_header(std::span<const std::uint8_t, kHeaderBytes> raw);

std::vector<std::uint8_t> encode_payload(const Message& message);
Message decode_payload(MessageType type, std::span<const std::uint8_t> payload);

std::vector<std::uint8_t> encode_frame(const Message& message);
/// Decodes exactly one complete frame; trailing bytes are an error.
Message decode_frame(std::span<const std::uint8_t> bytes);

}  // namespace ppia::wire
