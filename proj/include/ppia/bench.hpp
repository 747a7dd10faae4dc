// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ppia/profile_codec.hpp"

namespace ppia {

struct BenchRecord {
  std::size_t set_size = 0;
  double setup_seconds = 0;
  double auth_seconds = 0;
  unsigned key_bits = 0;
  Solver solver = Solver::kClosedForm;
  unsigned parallelism = 1;
};

struct BenchOptions {
  std::vector<std::size_t> sizes{1, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
  unsigned key_bits = 1024;
  Solver solver = Solver::kGaussian;
  unsigned repetitions = 3;
  unsigned parallelism = 0;  // 0 = hardware threads
  std::uint64_t seed = 1;
};

/// Times set-up (with one pre-generated key, keygen excluded) and a full
/// authentication round with s = t for every size; medians over repetitions.
std::vector<BenchRecord> bench_run(const BenchOptions& options, std::ostream* progress = nullptr);

std::string format_table(const std::vector<BenchRecord>& records);
/// Columns: size, setup_s, auth_s, key_bits, solver, parallelism.
std::string format_csv(const std::vector<BenchRecord>& records);

/// True when every value is at least (1 - jitter) times its predecessor.
bool monotone_within(const std::vector<double>& series, double jitter);

}  // namespace ppia
