// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "ppia/auth_core.hpp"
#include "ppia/carrier_service.hpp"
#include "ppia/profile_codec.hpp"
#include "ppia/wire.hpp"

namespace ppia {

/// The carrier answered with an Error message.
class CarrierError : public std::runtime_error {
 public:
  CarrierError(wire::ErrorCode code, const std::string& text);
  wire::ErrorCode code() const { return code_; }

 private:
  wire::ErrorCode code_;
};

/// Secret files are written atomically with owner-only permissions.
void save_secret(const std::filesystem::path& path, const DeviceSecret& secret);
DeviceSecret load_secret(const std::filesystem::path& path);

struct DeviceSetupRequest {
  std::string user_id;
  FeatureSet features;
  Endpoint carrier;
  unsigned key_bits = paillier::kDefaultKeyBits;
  SetupOptions options;
  std::filesystem::path secret_path;
};

/// Builds the profile, uploads it and writes the secret only once the carrier
/// acknowledged the upload.
DeviceSecret device_setup(const DeviceSetupRequest& request, Entropy& entropy);

struct DeviceAuthRequest {
  FeatureSet sample;
  std::optional<SimilarityFunction> similarity;  // case-b only
  Endpoint carrier;
  std::filesystem::path secret_path;
  RespondOptions respond;
};

AuthDecision device_auth(const DeviceAuthRequest& request, Entropy& entropy);

/// Response entries for a challenge, dispatching on the mode.
std::vector<AuthResponseEntry> respond_for_mode(const DeviceSecret& secret,
                                                const AuthChallenge& challenge,
                                                const FeatureSet& sample,
                                                const std::optional<SimilarityFunction>& similarity,
                                                Entropy& entropy, const RespondOptions& options);

}  // namespace ppia
