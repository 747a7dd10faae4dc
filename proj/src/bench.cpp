// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#include "ppia/bench.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <memory>
#include <ostream>
#include <sstream>

#include "parallel.hpp"
#include "ppia/auth_core.hpp"

namespace ppia {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : (values[mid - 1] + values[mid]) / 2;
}

std::vector<FeatureValue> random_features(std::size_t count, Entropy& entropy) {
  std::vector<FeatureValue> out;
  while (out.size() < count) {
    FeatureValue v = FeatureValue::of(BigInt(entropy.random_bits(128) + 1));
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<BenchRecord> bench_run(const BenchOptions& options, std::ostream* progress) {
  if (options.sizes.empty()) throw std::invalid_argument("bench_run: no sizes");
  if (options.repetitions == 0) throw std::invalid_argument("bench_run: zero repetitions");
  const unsigned parallelism = detail::resolve_parallelism(options.parallelism);
  Entropy entropy = Entropy::from_seed(options.seed);

  const auto keygen_start = Clock::now();
  const paillier::Keypair keys = paillier::keygen(options.key_bits, entropy);
  if (progress) *progress << fmt::format("keygen ({} bits): {:.3f} s\n", options.key_bits, seconds_since(keygen_start));

  const ProfileMeta meta{Mode::kCaseA, std::nullopt};
  std::vector<BenchRecord> records;
  for (std::size_t size : options.sizes) {
    std::vector<double> setup_times;
    std::vector<double> auth_times;
    for (unsigned rep = 0; rep < options.repetitions; ++rep) {
      auto profile_values = random_features(size, entropy);
      // Half of the sample overlaps the profile.
      auto sample_values = random_features(size - size / 2, entropy);
      sample_values.insert(sample_values.end(), profile_values.begin(),
                           profile_values.begin() + static_cast<std::ptrdiff_t>(size / 2));
      const FeatureSet profile_set = FeatureSet::make(meta, profile_values);
      const FeatureSet sample_set = FeatureSet::make(meta, sample_values);

      auto start = Clock::now();
      SetupResult setup = build_encrypted_profile("bench", profile_set, keys, entropy,
                                                  SetupOptions{options.solver, std::nullopt});
      setup_times.push_back(seconds_since(start));

      auto stored = std::make_shared<const EncryptedProfile>(std::move(setup.profile));
      start = Clock::now();
      IssuedChallenge issued = carrier_challenge(stored, entropy);
      auto entries = device_respond(setup.secret, issued.challenge, sample_set, entropy,
                                    RespondOptions{parallelism});
      const std::uint64_t matches = carrier_score(*issued.session, entries);
      decide(matches, stored->meta, stored->size, entries.size(), stored->threshold);
      auth_times.push_back(seconds_since(start));
    }
    BenchRecord record{size, median(setup_times), median(auth_times), options.key_bits,
                       options.solver, parallelism};
    if (progress) {
      *progress << fmt::format("size {:>3}: setup {:.3f} s, auth {:.3f} s\n", size,
                               record.setup_seconds, record.auth_seconds);
    }
    records.push_back(record);
  }
  return records;
}

std::string format_table(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << fmt::format("{:>6} {:>12} {:>12} {:>6} {:>12} {:>4}\n", "size", "setup_s", "auth_s",
                     "bits", "solver", "par");
  for (const auto& r : records) {
    out << fmt::format("{:>6} {:>12.4f} {:>12.4f} {:>6} {:>12} {:>4}\n", r.set_size,
                       r.setup_seconds, r.auth_seconds, r.key_bits, to_string(r.solver),
                       r.parallelism);
  }
  return out.str();
}

std::string format_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "size,setup_s,auth_s,key_bits,solver,parallelism\n";
  for (const auto& r : records) {
    out << fmt::format("{},{:.6f},{:.6f},{},{},{}\n", r.set_size, r.setup_seconds, r.auth_seconds,
                       r.key_bits, to_string(r.solver), r.parallelism);
  }
  return out.str();
}

bool monotone_within(const std::vector<double>& series, double jitter) {
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (series[i] < (1.0 - jitter) * series[i - 1]) return false;
  }
  return true;
}

}  // namespace ppia
