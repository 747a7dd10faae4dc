// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Plaintext reference computations. Nothing here touches the encryption,
// encoding or protocol code; results are compared against the protocol.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace ppia::oracle {

/// |X ∩ Y| by direct enumeration.
std::uint64_t intersection(const std::vector<mpz_class>& x, const std::vector<mpz_class>& y);

/// |X ∩ Y| by sorting both sides and merging.
std::uint64_t intersection_sort_merge(std::vector<mpz_class> x, std::vector<mpz_class> y);

using Similarity = std::function<std::uint64_t(const mpz_class& x, const mpz_class& y)>;

/// sum_{x in X} sum_{y in Y} l(x, y).
std::uint64_t weighted(const std::vector<mpz_class>& x, const std::vector<mpz_class>& y,
                       const Similarity& l);

/// sum_i |u_i - v_i|. Throws std::invalid_argument on a length mismatch.
std::uint64_t l1(const std::vector<std::uint64_t>& u, const std::vector<std::uint64_t>& v);

/// sum_i min(u_i, v_i).
std::uint64_t min_overlap(const std::vector<std::uint64_t>& u, const std::vector<std::uint64_t>& v);

/// The pair set {(i, j) : 1 <= j <= u_i} with 1-based i.
std::vector<std::pair<std::uint64_t, std::uint64_t>> unary_pairs(const std::vector<std::uint64_t>& u);

}  // namespace ppia::oracle
