// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#include "ppia/oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace ppia::oracle {

std::uint64_t intersection(const std::vector<mpz_class>& x, const std::vector<mpz_class>& y) {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    bool seen_before = false;
    for (std::size_t k = 0; k < i; ++k) seen_before = seen_before || x[k] == x[i];
    if (seen_before) continue;
    for (const auto& b : y) {
      if (x[i] == b) {
        ++count;
        break;
      }
    }
  }
  return count;
}

std::uint64_t intersection_sort_merge(std::vector<mpz_class> x, std::vector<mpz_class> y) {
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  std::sort(y.begin(), y.end());
  y.erase(std::unique(y.begin(), y.end()), y.end());
  std::uint64_t count = 0;
  auto a = x.begin();
  auto b = y.begin();
  while (a != x.end() && b != y.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

std::uint64_t weighted(const std::vector<mpz_class>& x, const std::vector<mpz_class>& y,
                       const Similarity& l) {
  std::uint64_t total = 0;
  for (const auto& a : x) {
    for (const auto& b : y) total += l(a, b);
  }
  return total;
}

std::uint64_t l1(const std::vector<std::uint64_t>& u, const std::vector<std::uint64_t>& v) {
  if (u.size() != v.size()) throw std::invalid_argument("oracle::l1: length mismatch");
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < u.size(); ++i) total += u[i] > v[i] ? u[i] - v[i] : v[i] - u[i];
  return total;
}

std::uint64_t min_overlap(const std::vector<std::uint64_t>& u, const std::vector<std::uint64_t>& v) {
  if (u.size() != v.size()) throw std::invalid_argument("oracle::min_overlap: length mismatch");
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < u.size(); ++i) total += std::min(u[i], v[i]);
  return total;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> unary_pairs(const std::vector<std::uint64_t>& u) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::uint64_t j = 1; j <= u[i]; ++j) out.emplace_back(i + 1, j);
  }
  return out;
}

}  // namespace ppia::oracle
