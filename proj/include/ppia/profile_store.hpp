// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sys/types.h>

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppia/profile_codec.hpp"

namespace ppia {

/// Writes via a temporary file in the same directory, fsync and rename, so
/// readers see either the old or the new content.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes,
                       mode_t permissions = 0644);
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

/// One file per user, named by the hex BLAKE2b-256 digest of the user id.
/// Re-storing a user replaces the previous record.
class ProfileStore {
 public:
  explicit ProfileStore(std::filesystem::path root);

  void store(const std::string& user_id, const EncryptedProfile& profile);
  std::optional<EncryptedProfile> load(const std::string& user_id) const;
  std::optional<std::vector<std::uint8_t>> load_bytes(const std::string& user_id) const;

  std::filesystem::path record_path(const std::string& user_id) const;
  const std::filesystem::path& root() const { return root_; }

 private:
  std::shared_ptr<std::mutex> lock_for(const std::string& user_id) const;

  std::filesystem::path root_;
  mutable std::mutex locks_mutex_;
  mutable std::map<std::string, std::shared_ptr<std::mutex>> locks_;
};

}  // namespace ppia
