// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#include "ppia/profile_store.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <sodium.h>
#include <unistd.h>

#include <array>
#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <system_error>
#include <thread>

#include "ppia/serialization.hpp"

namespace ppia {
namespace {

[[noreturn]] void throw_errno(const std::string& what) {
  throw std::system_error(errno, std::generic_category(), what);
}

std::string temp_suffix() {
  static std::atomic<std::uint64_t> counter{0};
  return ".tmp-" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes,
                       mode_t permissions) {
  const std::filesystem::path temp = path.string() + temp_suffix();
  int fd = ::open(temp.c_str(), O_WRONLY | O_CREAT | O_EXCL | O_CLOEXEC, permissions);
  if (fd < 0) throw_errno("open " + temp.string());
  std::size_t written = 0;
  while (written < bytes.size()) {
    ssize_t n = ::write(fd, bytes.data() + written, bytes.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      int saved = errno;
      ::close(fd);
      ::unlink(temp.c_str());
      errno = saved;
      throw_errno("write " + temp.string());
    }
    written += static_cast<std::size_t>(n);
  }
  // The umask may have narrowed the mode; secrets rely on the exact bits.
  if (::fchmod(fd, permissions) != 0 || ::fsync(fd) != 0) {
    int saved = errno;
    ::close(fd);
    ::unlink(temp.c_str());
    errno = saved;
    throw_errno("sync " + temp.string());
  }
  ::close(fd);
  if (::rename(temp.c_str(), path.c_str()) != 0) {
    int saved = errno;
    ::unlink(temp.c_str());
    errno = saved;
    throw_errno("rename " + path.string());
  }
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ProfileStore::ProfileStore(std::filesystem::path root) : root_(std::move(root)) {
  std::filesystem::create_directories(root_);
}

std::filesystem::path ProfileStore::record_path(const std::string& user_id) const {
  if (sodium_init() < 0) throw std::runtime_error("profile store: libsodium unavailable");
  std::array<std::uint8_t, 32> digest{};
  crypto_generichash(digest.data(), digest.size(),
                     reinterpret_cast<const unsigned char*>(user_id.data()), user_id.size(),
                     nullptr, 0);
  return root_ / (to_hex(digest) + ".profile");
}

std::shared_ptr<std::mutex> ProfileStore::lock_for(const std::string& user_id) const {
  std::lock_guard guard(locks_mutex_);
  auto& slot = locks_[user_id];
  if (!slot) slot = std::make_shared<std::mutex>();
  return slot;
}

void ProfileStore::store(const std::string& user_id, const EncryptedProfile& profile) {
  auto bytes = serialize_profile(profile);
  auto lock = lock_for(user_id);
  std::lock_guard guard(*lock);
  write_file_atomic(record_path(user_id), bytes);
}

std::optional<std::vector<std::uint8_t>> ProfileStore::load_bytes(const std::string& user_id) const {
  const auto path = record_path(user_id);
  auto lock = lock_for(user_id);
  std::lock_guard guard(*lock);
  if (!std::filesystem::exists(path)) return std::nullopt;
  return read_file(path);
}

std::optional<EncryptedProfile> ProfileStore::load(const std::string& user_id) const {
  auto bytes = load_bytes(user_id);
  if (!bytes) return std::nullopt;
  return deserialize_profile(*bytes);
}

}  // namespace ppia
