// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria. Pass criterion numbers as arguments to run a
// subset (the blinding audit covers whatever ran before it).

#include <spdlog/spdlog.h>
#include <stdlib.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "ppia/auth_core.hpp"
#include "ppia/bench.hpp"
#include "ppia/carrier_service.hpp"
#include "ppia/device_client.hpp"
#include "ppia/oracles.hpp"
#include "ppia/paillier.hpp"
#include "ppia/serialization.hpp"
#include "ppia/wire.hpp"
#include "test_support.hpp"

namespace {

using namespace ppia;
using testing::blinding_equation_holds;
using testing::plain;
using testing::random_features;
using Clock = std::chrono::steady_clock;

// Pinned limits.
constexpr unsigned kCorrectnessBits = 512;
constexpr std::size_t kCaseAInstances = 200;
constexpr std::size_t kCaseAMaxSize = 20;
constexpr double kCaseASecondsLimit = 600.0;
constexpr std::size_t kSoundnessEntries = 10000;
constexpr std::size_t kCaseBInstances = 50;
constexpr std::size_t kCaseBMaxTable = 32;
constexpr std::uint32_t kCaseBMaxWeight = 4;
constexpr std::size_t kCaseCInstances = 50;
constexpr std::uint32_t kCaseCMaxFeatures = 8;
constexpr std::uint32_t kCaseCMaxCap = 8;
constexpr std::size_t kPaillierCases = 1000;
constexpr std::size_t kLoopbackRuns = 20;
constexpr std::size_t kFrameMessages = 1000;
constexpr unsigned kBenchBits = 1024;
constexpr double kAuthSecondsLimit = 30.0;
constexpr double kGaussianSetupSecondsLimit = 600.0;
constexpr double kTrendJitter = 0.10;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixed(double value, int digits = 1) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << value;
  return out.str();
}

// Every generated profile passes through here. The solver that produced the
// profile is checked, and the other solver is run on the same roots and key.
struct BlindingAudit {
  std::size_t profiles = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::set<Solver> solvers_seen;
  Entropy entropy = Entropy::from_seed(0xa0d17);

  SetupObserver observer() {
    return [this](const SetupIntermediates& in) {
      ++profiles;
      const BigInt& n2 = in.keys.pub.n_squared;
      record(in.blinding.solver,
             blinding_equation_holds(in.blinding.r_primes, in.blinding.r_prime, in.roots, n2));
      if (in.blinding.solver == Solver::kGaussian) {
        auto other = solve_blinding(in.roots, in.blinding.r_prime, in.keys.pub, in.keys.sec, entropy);
        record(other.solver, blinding_equation_holds(other.r_primes, other.r_prime, in.roots, n2));
      } else {
        auto other = solve_blinding_gaussian(in.roots, in.keys.pub, in.keys.sec, entropy);
        record(other.solver, blinding_equation_holds(other.r_primes, other.r_prime, in.roots, n2));
      }
    };
  }

  void record(Solver solver, bool ok) {
    solvers_seen.insert(solver);
    ++checks;
    if (!ok) ++failures;
  }
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Enrolled {
  std::shared_ptr<const EncryptedProfile> profile;
  DeviceSecret secret;
};

Enrolled enroll(const std::string& user, const FeatureSet& features, unsigned bits, Solver solver,
                Entropy& entropy, BlindingAudit& audit) {
  auto result = build_encrypted_profile(user, features, bits, entropy, SetupOptions{solver, std::nullopt},
                                        audit.observer());
  return {std::make_shared<const EncryptedProfile>(std::move(result.profile)), std::move(result.secret)};
}

Solver alternate(std::size_t i) { return i % 2 == 0 ? Solver::kClosedForm : Solver::kGaussian; }

// Distinct values drawn from [1, domain].
std::vector<FeatureValue> small_values(std::size_t count, std::uint64_t domain, Entropy& entropy) {
  std::set<std::uint64_t> picked;
  while (picked.size() < count) picked.insert(1 + entropy.below(domain));
  std::vector<FeatureValue> out;
  for (auto v : picked) out.push_back(FeatureValue::of(v));
  return out;
}

Outcome case_a_correctness(BlindingAudit& audit) {
  Entropy entropy = Entropy::from_seed(1001);
  const auto start = Clock::now();
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < kCaseAInstances; ++i) {
    const std::size_t s = 1 + entropy.below(std::uint64_t{kCaseAMaxSize});
    const std::size_t t = 1 + entropy.below(std::uint64_t{kCaseAMaxSize});
    auto x = random_features(s, entropy);
    auto y = random_features(t, entropy);
    // Plant a random overlap.
    const std::size_t shared = entropy.below(std::uint64_t{std::min(s, t)} + 1);
    for (std::size_t k = 0; k < shared; ++k) y[k] = x[k];
    std::sort(y.begin(), y.end());
    y.erase(std::unique(y.begin(), y.end()), y.end());

    auto e = enroll("a" + std::to_string(i), FeatureSet::make({Mode::kCaseA, std::nullopt}, x), kCorrectnessBits,
                    alternate(i), entropy, audit);
    auto issued = carrier_challenge(e.profile, entropy);
    auto entries = device_respond(e.secret, issued.challenge, FeatureSet::make({Mode::kCaseA, std::nullopt}, y),
                                  entropy);
    if (carrier_score(*issued.session, entries) != oracle::intersection(plain(x), plain(y))) ++mismatches;
  }
  const double elapsed = seconds_since(start);
  return {mismatches == 0 && elapsed <= kCaseASecondsLimit,
          std::to_string(kCaseAInstances) + " instances, " + std::to_string(mismatches) + " mismatches, " +
              fixed(elapsed) + " s (limit " + fixed(kCaseASecondsLimit, 0) + " s)"};
}

Outcome soundness(BlindingAudit& audit) {
  Entropy entropy = Entropy::from_seed(1002);
  constexpr std::size_t kInstances = 20;
  constexpr std::size_t kPerInstance = kSoundnessEntries / kInstances;
  std::size_t entries_checked = 0;
  std::size_t spurious = 0;
  for (std::size_t i = 0; i < kInstances; ++i) {
    const std::size_t s = 1 + entropy.below(std::uint64_t{10});
    auto pool = random_features(s + kPerInstance, entropy);
    std::vector<FeatureValue> x(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(s));
    std::vector<FeatureValue> y(pool.begin() + static_cast<std::ptrdiff_t>(s), pool.end());
    auto e = enroll("s" + std::to_string(i), FeatureSet::make({Mode::kCaseA, std::nullopt}, x), kCorrectnessBits,
                    alternate(i), entropy, audit);
    auto issued = carrier_challenge(e.profile, entropy);
    auto entries = device_respond(e.secret, issued.challenge, FeatureSet::make({Mode::kCaseA, std::nullopt}, y),
                                  entropy);
    entries_checked += entries.size();
    spurious += carrier_score(*issued.session, entries);
  }
  return {entries_checked >= kSoundnessEntries && spurious == 0,
          std::to_string(entries_checked) + " non-member entries, " + std::to_string(spurious) +
              " spurious matches"};
}

Outcome case_b_correctness(BlindingAudit& audit) {
  Entropy entropy = Entropy::from_seed(1003);
  constexpr std::uint64_t kDomain = 40;
  std::size_t mismatches = 0;
  std::size_t largest_table = 0;
  std::uint64_t total_weight = 0;
  for (std::size_t i = 0; i < kCaseBInstances; ++i) {
    const auto max_weight = 1 + static_cast<std::uint32_t>(entropy.below(std::uint64_t{kCaseBMaxWeight}));
    auto x = small_values(1 + entropy.below(std::uint64_t{20}), kDomain, entropy);
    auto y = small_values(1 + entropy.below(std::uint64_t{4}), kDomain, entropy);
    const std::size_t table_size = y.size() + entropy.below(std::uint64_t{kCaseBMaxTable - y.size()} + 1);
    SimilarityFunction sim(max_weight);
    std::set<std::pair<std::uint64_t, std::uint64_t>> used;
    std::size_t entries = 0;
    auto add = [&](const FeatureValue& yv, std::uint64_t z) {
      if (!used.insert({yv.value().get_ui(), z}).second) return;
      sim.add(yv, FeatureValue::of(z), 1 + static_cast<std::uint32_t>(entropy.below(std::uint64_t{max_weight})));
      ++entries;
    };
    for (const auto& yv : y) add(yv, yv.value().get_ui());  // every y covered
    while (entries < table_size) add(y[entropy.below(std::uint64_t{y.size()})], 1 + entropy.below(kDomain));
    largest_table = std::max(largest_table, sim.entry_count());

    auto e = enroll("b" + std::to_string(i), FeatureSet::make({Mode::kCaseB, std::nullopt}, x), kCorrectnessBits,
                    alternate(i), entropy, audit);
    auto issued = carrier_challenge(e.profile, entropy);
    auto response = device_respond_weighted(e.secret, issued.challenge,
                                            FeatureSet::make({Mode::kCaseB, std::nullopt}, y), sim, entropy);
    const auto score = carrier_score(*issued.session, response);
    const auto expected = oracle::weighted(plain(x), plain(y), [&](const mpz_class& a, const mpz_class& b) {
      return std::uint64_t{sim.weight(FeatureValue::of(a), FeatureValue::of(b))};
    });
    total_weight += expected;
    if (score != expected) ++mismatches;
  }
  return {mismatches == 0 && largest_table <= kCaseBMaxTable,
          std::to_string(kCaseBInstances) + " instances, " + std::to_string(mismatches) +
              " mismatches, largest table " + std::to_string(largest_table) + ", total weight " +
              std::to_string(total_weight)};
}

std::vector<std::uint64_t> random_vector(std::uint32_t t, std::uint32_t cap, Entropy& entropy) {
  std::vector<std::uint64_t> out(t);
  std::uint64_t total = 0;
  do {
    total = 0;
    for (auto& v : out) total += (v = entropy.below(std::uint64_t{cap} + 1));
  } while (total == 0);
  return out;
}

Outcome case_c_correctness(BlindingAudit& audit) {
  Entropy entropy = Entropy::from_seed(1004);
  std::size_t mismatches = 0;
  std::uint64_t distance_sum = 0;
  for (std::size_t i = 0; i < kCaseCInstances; ++i) {
    const auto t = 1 + static_cast<std::uint32_t>(entropy.below(std::uint64_t{kCaseCMaxFeatures}));
    const auto cap = 1 + static_cast<std::uint32_t>(entropy.below(std::uint64_t{kCaseCMaxCap}));
    auto u = random_vector(t, cap, entropy);
    auto v = random_vector(t, cap, entropy);
    auto e = enroll("c" + std::to_string(i), encode_numeric(u, cap), kCorrectnessBits, alternate(i), entropy, audit);
    auto issued = carrier_challenge(e.profile, entropy);
    auto entries = device_respond(e.secret, issued.challenge, encode_numeric(v, cap), entropy);
    const auto matches = carrier_score(*issued.session, entries);
    auto decision = decide(matches, e.profile->meta, e.profile->size, entries.size(), e.profile->threshold);
    const auto expected = oracle::l1(u, v);
    distance_sum += expected;
    if (decision.dissimilarity != Dissimilarity::ratio(expected, 1)) ++mismatches;
  }
  return {mismatches == 0, std::to_string(kCaseCInstances) + " instances, " + std::to_string(mismatches) +
                               " mismatches, sum of distances " + std::to_string(distance_sum)};
}

Outcome blinding_equation(const BlindingAudit& audit) {
  const bool both = audit.solvers_seen.contains(Solver::kClosedForm) && audit.solvers_seen.contains(Solver::kGaussian);
  return {audit.profiles > 0 && audit.failures == 0 && both,
          std::to_string(audit.profiles) + " profiles, " + std::to_string(audit.checks) + " solutions checked (" +
              (both ? "both solvers" : "missing a solver") + "), " + std::to_string(audit.failures) + " failures"};
}

Outcome paillier_properties() {
  Entropy entropy = Entropy::from_seed(1006);
  constexpr std::size_t kKeys = 10;
  std::size_t failures = 0;
  std::size_t cases = 0;
  for (std::size_t k = 0; k < kKeys; ++k) {
    auto keys = paillier::keygen(kCorrectnessBits, entropy);
    const auto& pk = keys.pub;
    for (std::size_t i = 0; i < kPaillierCases / kKeys; ++i, ++cases) {
      const BigInt m1 = entropy.below(pk.n);
      const BigInt m2 = entropy.below(pk.n);
      const BigInt scalar = entropy.below(pk.n);
      auto c1 = paillier::encrypt(pk, m1, entropy).ciphertext;
      auto c2 = paillier::encrypt(pk, m2, entropy).ciphertext;
      const bool roundtrip = paillier::decrypt(pk, keys.sec, c1) == m1;
      const bool additive =
          paillier::decrypt(pk, keys.sec, paillier::add_cipher(pk, c1, c2)) == reduce(BigInt(m1 + m2), pk.n);
      const bool scalar_ok =
          paillier::decrypt(pk, keys.sec, paillier::scalar_pow(pk, c1, scalar)) == reduce(BigInt(m1 * scalar), pk.n);
      if (!(roundtrip && additive && scalar_ok)) ++failures;
    }
  }
  return {cases >= kPaillierCases && failures == 0,
          std::to_string(cases) + " cases at " + std::to_string(kCorrectnessBits) + " bits, " +
              std::to_string(failures) + " failures"};
}

Outcome device_state_audit(BlindingAudit& audit) {
  std::size_t runs = 0;
  std::vector<std::string> problems;
  auto check = [&](const std::string& label, ProfileMeta meta, std::vector<FeatureValue> values, Solver solver) {
    ++runs;
    std::vector<std::vector<std::uint8_t>> forbidden;
    auto observer = audit.observer();
    auto collect = [&](const SetupIntermediates& in) {
      observer(in);
      for (const auto& v : in.roots) forbidden.push_back(to_bytes(v));
      for (const auto& v : in.coeffs) forbidden.push_back(to_bytes(v));
      for (const auto& e : in.encryptions) forbidden.push_back(to_bytes(e.randomizer));
      for (const auto& v : in.blinding.r_primes) forbidden.push_back(to_bytes(v));
      forbidden.push_back(to_bytes(in.keys.sec.p));
      forbidden.push_back(to_bytes(in.keys.sec.q));
    };
    auto permuted = values;
    Entropy shuffler = Entropy::from_seed(7);
    shuffler.shuffle(permuted);
    std::reverse(permuted.begin(), permuted.end());

    Entropy first = Entropy::from_seed(1007);
    Entropy second = Entropy::from_seed(1007);
    SetupOptions options{solver, std::nullopt};
    auto a = build_encrypted_profile("audit-user", FeatureSet::make(meta, values), kCorrectnessBits, first, options,
                                     collect);
    auto b = build_encrypted_profile("audit-user", FeatureSet::make(meta, permuted), kCorrectnessBits, second,
                                     options, observer);
    const auto bytes = serialize_secret(a.secret);
    if (bytes != serialize_secret(b.secret)) problems.push_back(label + ": permutation changed the secret");

    // Field inventory.
    ByteReader reader(bytes);
    bool inventory = reader.user_id() == "audit-user" && reader.integer() == a.secret.d &&
                     reader.integer() == a.secret.r_prime;
    ByteWriter meta_bytes;
    write_meta(meta_bytes, meta);
    const auto expected_meta = meta_bytes.take();
    for (auto byte : expected_meta) inventory = inventory && !reader.at_end() && reader.u8() == byte;
    inventory = inventory && reader.at_end();
    if (!inventory) problems.push_back(label + ": unexpected field inventory");

    for (const auto& needle : forbidden) {
      if (needle.size() < 4) continue;  // tiny values collide with length prefixes by chance
      if (std::search(bytes.begin(), bytes.end(), needle.begin(), needle.end()) != bytes.end()) {
        problems.push_back(label + ": secret contains set-up material");
        break;
      }
    }
  };

  Entropy entropy = Entropy::from_seed(1017);
  check("case-a/closed-form", {Mode::kCaseA, std::nullopt}, random_features(8, entropy), Solver::kClosedForm);
  check("case-a/gaussian", {Mode::kCaseA, std::nullopt}, random_features(8, entropy), Solver::kGaussian);
  check("case-b/closed-form", {Mode::kCaseB, std::nullopt}, random_features(6, entropy), Solver::kClosedForm);
  check("case-b/gaussian", {Mode::kCaseB, std::nullopt}, random_features(6, entropy), Solver::kGaussian);
  auto numeric = encode_numeric(std::vector<std::uint64_t>{3, 0, 2, 5}, 5);
  check("case-c/closed-form", numeric.meta(), numeric.values(), Solver::kClosedForm);
  check("case-c/gaussian", numeric.meta(), numeric.values(), Solver::kGaussian);

  std::string detail = std::to_string(runs) + " set-up pairs; fields (user id, d, R', mode)";
  for (const auto& p : problems) detail += "; " + p;
  return {problems.empty(), detail};
}

struct LoopbackCase {
  std::string user;
  FeatureSet profile;
  FeatureSet sample;
  std::optional<SimilarityFunction> similarity;
};

LoopbackCase loopback_case(std::size_t i, Entropy& entropy) {
  const std::string user = "loop-" + std::to_string(i);
  switch (i % 3) {
    case 0: {
      auto x = random_features(1 + entropy.below(std::uint64_t{10}), entropy);
      auto y = random_features(1 + entropy.below(std::uint64_t{10}), entropy);
      for (std::size_t k = 0; k < std::min(x.size(), y.size()) / 2; ++k) y[k] = x[k];
      std::sort(y.begin(), y.end());
      y.erase(std::unique(y.begin(), y.end()), y.end());
      return {user, FeatureSet::make({Mode::kCaseA, std::nullopt}, x),
              FeatureSet::make({Mode::kCaseA, std::nullopt}, y), std::nullopt};
    }
    case 1: {
      auto x = small_values(1 + entropy.below(std::uint64_t{8}), 20, entropy);
      auto y = small_values(1 + entropy.below(std::uint64_t{3}), 20, entropy);
      SimilarityFunction sim(3);
      for (const auto& yv : y) {
        sim.add(yv, yv, 1 + static_cast<std::uint32_t>(entropy.below(std::uint64_t{3})));
        const auto near = yv.value().get_ui() + 1;
        sim.add(yv, FeatureValue::of(near), 1);
      }
      return {user, FeatureSet::make({Mode::kCaseB, std::nullopt}, x),
              FeatureSet::make({Mode::kCaseB, std::nullopt}, y), sim};
    }
    default: {
      const auto t = 1 + static_cast<std::uint32_t>(entropy.below(std::uint64_t{5}));
      const auto cap = 1 + static_cast<std::uint32_t>(entropy.below(std::uint64_t{5}));
      return {user, encode_numeric(random_vector(t, cap, entropy), cap),
              encode_numeric(random_vector(t, cap, entropy), cap), std::nullopt};
    }
  }
}

Outcome wire_equivalence(BlindingAudit& audit) {
  spdlog::set_level(spdlog::level::warn);
  char pattern[] = "/tmp/ppia-acceptance-XXXXXX";
  const std::filesystem::path root = ::mkdtemp(pattern);
  Entropy cases = Entropy::from_seed(1008);
  std::size_t identical = 0;
  std::size_t accepted = 0;
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < kLoopbackRuns; ++i) {
    const auto c = loopback_case(i, cases);
    const std::uint64_t carrier_seed = 5000 + i;
    const std::uint64_t setup_seed = 6000 + i;
    const std::uint64_t auth_seed = 7000 + i;
    const auto solver = alternate(i / 3);

    // In process.
    Entropy setup_entropy = Entropy::from_seed(setup_seed);
    auto local = build_encrypted_profile(c.user, c.profile, kCorrectnessBits, setup_entropy,
                                         SetupOptions{solver, std::nullopt}, audit.observer());
    auto shared = std::make_shared<const EncryptedProfile>(local.profile);
    Entropy carrier_entropy = Entropy::from_seed(carrier_seed);
    auto issued = carrier_challenge(shared, carrier_entropy);
    Entropy auth_entropy = Entropy::from_seed(auth_seed);
    auto entries = respond_for_mode(local.secret, issued.challenge, c.sample, c.similarity, auth_entropy, {});
    const auto matches = carrier_score(*issued.session, entries);
    const auto expected = decide(matches, shared->meta, shared->size, entries.size(), shared->threshold);

    // Over a socket, against a fresh carrier with the same seed.
    CarrierService service(CarrierConfig{Endpoint{"127.0.0.1", 0}, root / c.user, std::chrono::seconds{60},
                                         carrier_seed});
    const Endpoint endpoint{"127.0.0.1", service.start()};
    const auto secret_path = root / (c.user + ".secret");
    Entropy remote_setup = Entropy::from_seed(setup_seed);
    device_setup(DeviceSetupRequest{c.user, c.profile, endpoint, kCorrectnessBits, SetupOptions{solver, std::nullopt},
                                    secret_path},
                 remote_setup);
    Entropy remote_auth = Entropy::from_seed(auth_seed);
    const auto decision = device_auth(DeviceAuthRequest{c.sample, c.similarity, endpoint, secret_path, {}}, remote_auth);
    const bool same_record = service.store().load_bytes(c.user) == serialize_profile(local.profile);
    const bool same_secret = load_secret(secret_path) == local.secret;
    service.stop();

    if (decision == expected && same_record && same_secret && service.last_decision(c.user) == expected) {
      ++identical;
    } else {
      problems.push_back(c.user);
    }
    accepted += expected.accepted ? 1 : 0;
  }
  std::filesystem::remove_all(root);

  Entropy frames = Entropy::from_seed(1018);
  std::size_t round_trips = 0;
  for (std::size_t i = 0; i < kFrameMessages; ++i) {
    const auto message = testing::random_message(frames);
    if (wire::decode_frame(wire::encode_frame(message)) == message) ++round_trips;
  }

  std::string detail = std::to_string(identical) + "/" + std::to_string(kLoopbackRuns) +
                       " loopback decisions identical (" + std::to_string(accepted) + " accepts), " +
                       std::to_string(round_trips) + "/" + std::to_string(kFrameMessages) + " frames round-trip";
  for (const auto& p : problems) detail += "; differs: " + p;
  return {identical == kLoopbackRuns && round_trips == kFrameMessages, detail};
}

Outcome benchmark_trend() {
  const std::vector<std::size_t> trend_sizes{5, 10, 20, 40};
  BenchOptions options;
  options.sizes = {5, 10, 20, 40, 50};
  options.key_bits = kBenchBits;
  options.solver = Solver::kGaussian;
  options.repetitions = 3;
  options.seed = 1009;
  auto records = bench_run(options, &std::cerr);
  std::cerr << format_table(records);

  auto at = [&](std::size_t size) {
    return *std::find_if(records.begin(), records.end(), [&](const BenchRecord& r) { return r.set_size == size; });
  };
  const double auth20 = at(20).auth_seconds;
  const double setup50 = at(50).setup_seconds;
  std::vector<double> setup_series;
  std::vector<double> auth_series;
  for (auto size : trend_sizes) {
    setup_series.push_back(at(size).setup_seconds);
    auth_series.push_back(at(size).auth_seconds);
  }
  const bool setup_trend = monotone_within(setup_series, kTrendJitter);
  const bool auth_trend = monotone_within(auth_series, kTrendJitter);
  return {auth20 <= kAuthSecondsLimit && setup50 <= kGaussianSetupSecondsLimit && setup_trend && auth_trend,
          "auth s=t=20 " + fixed(auth20, 2) + " s (limit " + fixed(kAuthSecondsLimit, 0) +
              "), gaussian set-up s=50 " + fixed(setup50, 2) + " s (limit " + fixed(kGaussianSetupSecondsLimit, 0) +
              "), set-up trend " + (setup_trend ? "monotone" : "NOT monotone") + ", auth trend " +
              (auth_trend ? "monotone" : "NOT monotone") + " over {5,10,20,40} at " + std::to_string(kBenchBits) +
              " bits"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  auto wanted = [&](int id) { return selected.empty() || selected.contains(id); };

  BlindingAudit audit;
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "case-a correctness", [&] { return case_a_correctness(audit); }},
      {2, "soundness on non-members", [&] { return soundness(audit); }},
      {3, "case-b correctness", [&] { return case_b_correctness(audit); }},
      {4, "case-c correctness", [&] { return case_c_correctness(audit); }},
      {6, "paillier properties", [] { return paillier_properties(); }},
      {7, "device state audit", [&] { return device_state_audit(audit); }},
      {8, "wire equivalence", [&] { return wire_equivalence(audit); }},
      {5, "blinding equation", [&] { return blinding_equation(audit); }},
      {9, "benchmark trend", [] { return benchmark_trend(); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!wanted(c.id)) continue;
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failed;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": " << outcome.detail
              << std::endl;
  }
  return failed;
}
