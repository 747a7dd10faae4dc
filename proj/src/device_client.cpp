// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#include "ppia/device_client.hpp"

#include "ppia/profile_store.hpp"
#include "ppia/serialization.hpp"

namespace ppia {
namespace {

template <typename T>
T expect(wire::Message reply) {
  if (auto* err = std::get_if<wire::Error>(&reply)) throw CarrierError(err->code, err->text);
  if (auto* ok = std::get_if<T>(&reply)) return std::move(*ok);
  throw ProtocolError("unexpected message type from carrier");
}

}  // namespace

CarrierError::CarrierError(wire::ErrorCode code, const std::string& text)
    : std::runtime_error("carrier error " + std::to_string(static_cast<int>(code)) + ": " + text),
      code_(code) {}

void save_secret(const std::filesystem::path& path, const DeviceSecret& secret) {
  write_file_atomic(path, serialize_secret(secret), 0600);
}

DeviceSecret load_secret(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw std::runtime_error("device secret not found: " + path.string());
  }
  return deserialize_secret(read_file(path));
}

DeviceSecret device_setup(const DeviceSetupRequest& request, Entropy& entropy) {
  if (request.secret_path.empty()) throw std::invalid_argument("device_setup: no secret path");
  SetupResult setup = build_encrypted_profile(request.user_id, request.features, request.key_bits,
                                              entropy, request.options);
  Connection connection = Connection::open(request.carrier);
  expect<wire::StoreAck>(connection.request(wire::StoreProfile{request.user_id, setup.profile}));
  save_secret(request.secret_path, setup.secret);
  return setup.secret;
}

std::vector<AuthResponseEntry> respond_for_mode(const DeviceSecret& secret,
                                                const AuthChallenge& challenge,
                                                const FeatureSet& sample,
                                                const std::optional<SimilarityFunction>& similarity,
                                                Entropy& entropy, const RespondOptions& options) {
  if (sample.mode() == Mode::kCaseB) {
    if (!similarity) throw std::invalid_argument("case-b authentication needs a similarity table");
    return device_respond_weighted(secret, challenge, sample, *similarity, entropy, options);
  }
  return device_respond(secret, challenge, sample, entropy, options);
}

AuthDecision device_auth(const DeviceAuthRequest& request, Entropy& entropy) {
  const DeviceSecret secret = load_secret(request.secret_path);
  if (secret.meta.mode != request.sample.mode()) {
    throw ProtocolError("sample mode does not match the enrolled mode");
  }
  Connection connection = Connection::open(request.carrier);
  auto challenge = expect<wire::Challenge>(
      connection.request(wire::AuthInit{secret.user_id, request.sample.size()}));
  auto entries = respond_for_mode(secret, challenge.challenge, request.sample, request.similarity,
                                  entropy, request.respond);
  auto result = expect<wire::Result>(
      connection.request(wire::Response{challenge.challenge.session_id, std::move(entries)}));
  return result.decision;
}

}  // namespace ppia
