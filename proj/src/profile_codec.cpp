// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

#include "ppia/profile_codec.hpp"

#include <sodium.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <array>
#include <stdexcept>

namespace ppia {

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::kCaseA: return "case-a";
    case Mode::kCaseB: return "case-b";
    case Mode::kCaseC: return "case-c";
  }
  return "unknown";
}

Mode parse_mode(std::string_view text) {
  if (text == "case-a") return Mode::kCaseA;
  if (text == "case-b") return Mode::kCaseB;
  if (text == "case-c") return Mode::kCaseC;
  throw std::invalid_argument("unknown mode: " + std::string(text));
}

const char* to_string(Solver solver) {
  return solver == Solver::kGaussian ? "gaussian" : "closed-form";
}

Solver parse_solver(std::string_view text) {
  if (text == "closed-form") return Solver::kClosedForm;
  if (text == "gaussian") return Solver::kGaussian;
  throw std::invalid_argument("unknown solver: " + std::string(text));
}

const BigInt& feature_upper_bound() {
  static const BigInt bound = [] {
    BigInt b = 1;
    mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), 128);
    return b;
  }();
  return bound;
}

FeatureValue FeatureValue::of(const BigInt& value) {
  if (value < 1 || value > feature_upper_bound()) {
    throw std::invalid_argument("feature value outside [1, 2^128]");
  }
  return FeatureValue(value);
}

FeatureSet FeatureSet::make(ProfileMeta meta, std::vector<FeatureValue> values) {
  if (values.empty()) throw std::invalid_argument("feature set is empty");
  if ((meta.mode == Mode::kCaseC) != meta.numeric.has_value()) {
    throw std::invalid_argument("numeric parameters are required exactly for case-c");
  }
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end()) {
    throw std::invalid_argument("feature set contains duplicate values");
  }
  return FeatureSet(std::move(meta), std::move(values));
}

std::vector<BigInt> FeatureSet::integers() const {
  std::vector<BigInt> out;
  out.reserve(values_.size());
  for (const auto& v : values_) out.push_back(v.value());
  return out;
}

std::vector<BigInt> poly_from_roots(std::span<const BigInt> roots, const BigInt& modulus) {
  if (roots.empty()) throw std::invalid_argument("poly_from_roots: no roots");
  std::vector<BigInt> residues;
  residues.reserve(roots.size());
  for (const auto& r : roots) residues.push_back(reduce(r, modulus));
  std::vector<BigInt> sorted = residues;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("poly_from_roots: roots collide modulo the modulus");
  }

  std::vector<BigInt> coeffs{BigInt(1)};
  for (const auto& a : residues) {
    // Multiply by (x - a).
    std::vector<BigInt> next(coeffs.size() + 1);
    for (std::size_t i = 0; i < next.size(); ++i) {
      BigInt term = 0;
      if (i > 0) term += coeffs[i - 1];
      if (i < coeffs.size()) term -= a * coeffs[i];
      next[i] = reduce(term, modulus);
    }
    coeffs = std::move(next);
  }
  return coeffs;
}

namespace {

bool is_trivial(const BlindingSolution& solution) {
  return std::all_of(solution.r_primes.begin() + 1, solution.r_primes.end(),
                     [](const BigInt& v) { return v == 1; });
}

constexpr int kBlindingAttempts = 64;

}  // namespace

BlindingSolution solve_blinding_with(std::span<const BigInt> roots, const BigInt& r_prime,
                                     const paillier::PublicKey& pk, const paillier::SecretKey& sk,
                                     const BigInt& base, const BigInt& c_prime) {
  const BigInt& n2 = pk.n_squared;
  if (!is_unit(r_prime, n2)) throw std::invalid_argument("solve_blinding: R' is not a unit mod n^2");
  if (!is_unit(base, n2)) throw std::invalid_argument("solve_blinding: base is not a unit mod n^2");
  const BigInt exponent_mod = sk.group_exponent();
  if (sgn(reduce(c_prime, exponent_mod)) == 0) {
    throw std::invalid_argument("solve_blinding: c' = 0 yields the trivial solution");
  }

  std::vector<BigInt> coeffs = poly_from_roots(roots, exponent_mod);
  BlindingSolution out;
  out.solver = Solver::kClosedForm;
  out.r_prime = r_prime;
  out.r_primes.reserve(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    BigInt x = reduce(BigInt(-c_prime * coeffs[k]), exponent_mod);
    BigInt value = pow_mod(base, x, n2);
    if (k == 0) value = reduce(BigInt(value * r_prime), n2);
    out.r_primes.push_back(std::move(value));
    wipe(x);
  }
  for (auto& c : coeffs) wipe(c);
  return out;
}

BlindingSolution solve_blinding(std::span<const BigInt> roots, const BigInt& r_prime,
                                const paillier::PublicKey& pk, const paillier::SecretKey& sk,
                                Entropy& entropy) {
  const BigInt exponent_mod = sk.group_exponent();
  for (int attempt = 0; attempt < kBlindingAttempts; ++attempt) {
    BigInt base = entropy.unit(pk.n_squared);
    BigInt c_prime = entropy.in_range(1, exponent_mod);
    BlindingSolution solution = solve_blinding_with(roots, r_prime, pk, sk, base, c_prime);
    wipe(base);
    wipe(c_prime);
    if (!is_trivial(solution)) return solution;
  }
  throw std::runtime_error("solve_blinding: only trivial solutions within retry budget");
}

std::optional<VandermondeSolution> solve_vandermonde(std::span<const BigInt> roots) {
  const std::size_t s = roots.size();
  if (s == 0) return std::nullopt;

  // Augmented matrix [V | 1] with V[j][k] = root_j^(k+1).
  std::vector<std::vector<BigInt>> m(s, std::vector<BigInt>(s + 1));
  for (std::size_t j = 0; j < s; ++j) {
    BigInt power = roots[j];
    for (std::size_t k = 0; k < s; ++k) {
      m[j][k] = power;
      power *= roots[j];
    }
    m[j][s] = 1;
  }

  BigInt previous = 1;
  for (std::size_t k = 0; k < s; ++k) {
    std::size_t pivot = k;
    while (pivot < s && sgn(m[pivot][k]) == 0) ++pivot;
    if (pivot == s) return std::nullopt;
    if (pivot != k) std::swap(m[pivot], m[k]);
    for (std::size_t i = k + 1; i < s; ++i) {
      for (std::size_t j = k + 1; j <= s; ++j) {
        BigInt t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
      }
      m[i][k] = 0;
    }
    previous = m[k][k];
  }

  // U x = b'. With D the final pivot, X = D x is integral (Cramer), so every
  // division in the back substitution is exact.
  VandermondeSolution out;
  out.determinant = m[s - 1][s - 1];
  out.scaled_solution.assign(s, BigInt(0));
  for (std::size_t i = s; i-- > 0;) {
    BigInt acc = out.determinant * m[i][s];
    for (std::size_t k = i + 1; k < s; ++k) acc -= m[i][k] * out.scaled_solution[k];
    mpz_divexact(out.scaled_solution[i].get_mpz_t(), acc.get_mpz_t(), m[i][i].get_mpz_t());
  }
  return out;
}

BlindingSolution solve_blinding_gaussian(std::span<const BigInt> roots,
                                         const paillier::PublicKey& pk,
                                         const paillier::SecretKey& sk, Entropy& entropy) {
  const bool has_zero_root = std::any_of(roots.begin(), roots.end(),
                                         [&](const BigInt& r) { return sgn(reduce(r, pk.n)) == 0; });
  std::optional<VandermondeSolution> system;
  if (!has_zero_root) system = solve_vandermonde(roots);
  if (!system) {
    spdlog::warn("gaussian blinding solver: degenerate system (s={}), using closed form",
                 roots.size());
    BigInt r_prime = entropy.unit(pk.n_squared);
    return solve_blinding(roots, r_prime, pk, sk, entropy);
  }

  const BigInt& n2 = pk.n_squared;
  const BigInt exponent_mod = sk.group_exponent();
  for (int attempt = 0; attempt < kBlindingAttempts; ++attempt) {
    BigInt base = entropy.unit(n2);
    BigInt target = entropy.in_range(1, exponent_mod);
    BlindingSolution out;
    out.solver = Solver::kGaussian;
    out.r_primes.reserve(roots.size() + 1);
    out.r_primes.push_back(entropy.unit(n2));
    for (const auto& x : system->scaled_solution) {
      out.r_primes.push_back(pow_mod(base, reduce(BigInt(target * x), exponent_mod), n2));
    }
    // Every root satisfies sum_k x_k a^k = target * det, so R' = r'_0 w^(target*det).
    BigInt shift = pow_mod(base, reduce(BigInt(target * system->determinant), exponent_mod), n2);
    out.r_prime = reduce(BigInt(out.r_primes[0] * shift), n2);
    wipe(base);
    wipe(target);
    if (!is_trivial(out)) return out;
  }
  throw std::runtime_error("solve_blinding_gaussian: only trivial solutions within retry budget");
}

std::uint64_t default_threshold(const ProfileMeta& meta, std::uint64_t profile_size) {
  if (meta.mode == Mode::kCaseC) {
    const std::uint64_t span = std::uint64_t{meta.numeric->features} * meta.numeric->cap;
    return std::max<std::uint64_t>(1, (span + 3) / 4);
  }
  return std::max<std::uint64_t>(1, (profile_size + 1) / 2);
}

SetupResult build_encrypted_profile(const std::string& user_id, const FeatureSet& features,
                                    unsigned bits, Entropy& entropy, const SetupOptions& options,
                                    const SetupObserver& observer) {
  return build_encrypted_profile(user_id, features, paillier::keygen(bits, entropy), entropy,
                                 options, observer);
}

SetupResult build_encrypted_profile(const std::string& user_id, const FeatureSet& features,
                                    paillier::Keypair keys, Entropy& entropy,
                                    const SetupOptions& options, const SetupObserver& observer) {
  if (options.threshold && *options.threshold == 0) {
    throw std::invalid_argument("threshold must be positive");
  }
  const paillier::PublicKey& pk = keys.pub;
  const BigInt& n2 = pk.n_squared;

  std::vector<BigInt> roots = features.integers();
  std::vector<BigInt> coeffs = poly_from_roots(roots, pk.n);

  std::vector<paillier::Encryption> encryptions;
  encryptions.reserve(coeffs.size());
  for (const auto& c : coeffs) encryptions.push_back(paillier::encrypt(pk, c, entropy));

  BlindingSolution blinding;
  if (options.solver == Solver::kGaussian) {
    blinding = solve_blinding_gaussian(roots, pk, keys.sec, entropy);
  } else {
    BigInt r_prime = entropy.unit(n2);
    blinding = solve_blinding(roots, r_prime, pk, keys.sec, entropy);
  }

  std::vector<BigInt> ratios;
  ratios.reserve(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    BigInt inv = inverse_mod(encryptions[i].randomizer, n2);
    ratios.push_back(reduce(BigInt(blinding.r_primes[i] * inv), n2));
  }
  BigInt d = entropy.unit(pk.n);

  SetupResult result;
  result.profile.pk = pk;
  result.profile.size = roots.size();
  result.profile.meta = features.meta();
  result.profile.threshold = options.threshold.value_or(default_threshold(features.meta(), roots.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    result.profile.enc_coeffs.push_back(encryptions[i].ciphertext);
    result.profile.blinded_r.push_back(pow_mod(ratios[i], d, n2));
  }
  result.secret = DeviceSecret{user_id, d, blinding.r_prime, features.meta()};

  if (observer) {
    observer(SetupIntermediates{keys, roots, coeffs, encryptions, blinding, ratios, d});
  }

  // Nothing below survives set-up.
  keys.sec.wipe();
  for (auto& v : roots) wipe(v);
  for (auto& v : coeffs) wipe(v);
  for (auto& e : encryptions) wipe(e.randomizer);
  for (auto& v : blinding.r_primes) wipe(v);
  wipe(blinding.r_prime);
  for (auto& v : ratios) wipe(v);
  wipe(d);
  return result;
}

FeatureSet encode_numeric(std::span<const std::uint64_t> vector, std::uint32_t cap) {
  if (vector.empty()) throw std::invalid_argument("encode_numeric: empty vector");
  if (cap == 0) throw std::invalid_argument("encode_numeric: cap must be positive");
  std::vector<FeatureValue> values;
  for (std::size_t i = 0; i < vector.size(); ++i) {
    if (vector[i] > cap) throw std::invalid_argument("encode_numeric: entry exceeds cap");
    for (std::uint64_t j = 1; j <= vector[i]; ++j) {
      values.push_back(FeatureValue::of(static_cast<std::uint64_t>(i) * cap + j));
    }
  }
  ProfileMeta meta{Mode::kCaseC, NumericParams{static_cast<std::uint32_t>(vector.size()), cap}};
  return FeatureSet::make(meta, std::move(values));
}

std::vector<std::uint64_t> decode_numeric(const FeatureSet& encoded) {
  const auto& params = encoded.meta().numeric;
  if (encoded.mode() != Mode::kCaseC || !params) {
    throw std::invalid_argument("decode_numeric: not a case-c feature set");
  }
  std::vector<std::uint64_t> out(params->features, 0);
  const BigInt limit = BigInt(static_cast<unsigned long>(params->features)) * params->cap;
  for (const auto& v : encoded.values()) {
    if (v.value() > limit) throw std::invalid_argument("decode_numeric: value out of range");
    const std::uint64_t raw = v.value().get_ui() - 1;
    out[raw / params->cap] += 1;
  }
  return out;
}

FeatureValue hash_feature(std::span<const std::uint8_t> raw) {
  if (raw.empty()) throw std::invalid_argument("hash_feature: empty input");
  if (sodium_init() < 0) throw std::runtime_error("hash_feature: libsodium unavailable");
  std::array<std::uint8_t, 16> digest{};
  crypto_generichash(digest.data(), digest.size(), raw.data(), raw.size(), nullptr, 0);
  BigInt value = from_bytes(digest);
  if (sgn(value) == 0) value = feature_upper_bound();
  return FeatureValue::of(value);
}

FeatureValue hash_feature(std::string_view raw) {
  return hash_feature(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()));
}

}  // namespace ppia
