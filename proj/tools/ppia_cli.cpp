// Copyright 2026 The ppia Authors
// SPDX-License-Identifier: Apache-2.0

// Operator CLI: carrier service, device set-up/authentication, benchmark and
// plaintext oracles.

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ppia/auth_core.hpp"
#include "ppia/bench.hpp"
#include "ppia/carrier_service.hpp"
#include "ppia/device_client.hpp"
#include "ppia/oracles.hpp"
#include "ppia/profile_codec.hpp"
#include "ppia/profile_store.hpp"

namespace {

using namespace ppia;

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitError = 2;

std::atomic<bool> g_interrupted{false};

void on_signal(int) { g_interrupted = true; }

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    out.push_back(line);
  }
  return out;
}

// One raw feature per line, hashed into the integer domain.
std::vector<FeatureValue> read_nominal_features(const std::string& path) {
  std::vector<FeatureValue> out;
  std::set<std::string> seen;
  for (const auto& line : read_lines(path)) {
    if (seen.insert(line).second) out.push_back(hash_feature(line));
  }
  if (out.empty()) throw UsageError("feature file " + path + " is empty");
  return out;
}

std::vector<std::uint64_t> read_numeric_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::vector<std::uint64_t> out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || token.front() == '-') {
      throw UsageError("not a nonnegative integer in " + path + ": " + token);
    }
    out.push_back(value);
  }
  if (out.empty()) throw UsageError("numeric vector file " + path + " is empty");
  return out;
}

// Lines "y z weight"; y and z are raw feature tokens.
SimilarityFunction read_similarity(const std::string& path) {
  struct Row {
    std::string y, z;
    std::uint32_t weight;
  };
  std::vector<Row> rows;
  std::uint32_t max_weight = 0;
  for (const auto& line : read_lines(path)) {
    std::istringstream fields(line);
    Row row;
    long long weight = 0;
    if (!(fields >> row.y >> row.z >> weight) || weight <= 0 || weight > UINT32_MAX) {
      throw UsageError("malformed similarity line: " + line);
    }
    row.weight = static_cast<std::uint32_t>(weight);
    max_weight = std::max(max_weight, row.weight);
    rows.push_back(row);
  }
  if (rows.empty()) throw UsageError("similarity file " + path + " is empty");
  SimilarityFunction sim(max_weight);
  for (const auto& row : rows) sim.add(hash_feature(row.y), hash_feature(row.z), row.weight);
  return sim;
}

Entropy make_entropy(const std::optional<std::uint64_t>& seed) {
  if (seed) {
    spdlog::warn("deterministic test-mode randomness (seed {}); not for production", *seed);
    return Entropy::from_seed(*seed);
  }
  return Entropy::from_os();
}

std::string default_secret_path(const std::string& user) { return user + ".secret"; }

struct ServeArgs {
  std::string listen = "127.0.0.1:7340";
  std::string data_dir = "carrier-data";
  unsigned timeout = 60;
  std::optional<std::uint64_t> seed;
};

int run_serve(const ServeArgs& args) {
  CarrierConfig config;
  config.listen = parse_endpoint(args.listen);
  config.store_root = args.data_dir;
  config.session_timeout = std::chrono::seconds(args.timeout);
  config.seed = args.seed;
  CarrierService service(config);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  const auto port = service.start();
  std::cout << "listening on " << config.listen.host << ":" << port << std::endl;
  while (!g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  service.stop();
  return 0;
}

struct SetupArgs {
  std::string user;
  std::string mode = "case-a";
  std::string features;
  std::string numeric;
  std::uint32_t cap = 0;
  std::string carrier = "127.0.0.1:7340";
  unsigned bits = paillier::kDefaultKeyBits;
  std::string secret;
  std::string solver = "closed-form";
  std::optional<std::uint64_t> threshold;
  std::optional<std::uint64_t> seed;
};

FeatureSet load_setup_features(const SetupArgs& args, Mode mode) {
  if (mode == Mode::kCaseC) {
    if (args.numeric.empty() || args.cap == 0) throw UsageError("case-c needs --numeric and --cap");
    auto vector = read_numeric_vector(args.numeric);
    std::uint64_t total = 0;
    for (auto v : vector) total += v;
    if (total == 0) throw UsageError("numeric vector is all zeros; nothing to enroll");
    return encode_numeric(vector, args.cap);
  }
  if (args.features.empty()) throw UsageError(std::string(to_string(mode)) + " needs --features");
  return FeatureSet::make(ProfileMeta{mode, std::nullopt}, read_nominal_features(args.features));
}

int run_setup(const SetupArgs& args) {
  const Mode mode = parse_mode(args.mode);
  DeviceSetupRequest request{args.user, load_setup_features(args, mode), parse_endpoint(args.carrier),
                             args.bits, SetupOptions{parse_solver(args.solver), args.threshold},
                             args.secret.empty() ? default_secret_path(args.user) : args.secret};
  Entropy entropy = make_entropy(args.seed);
  device_setup(request, entropy);
  std::cout << "profile for '" << args.user << "' stored at the carrier ("
            << request.features.size() << " features); secret written to "
            << request.secret_path.string() << std::endl;
  return 0;
}

struct AuthArgs {
  std::string user;
  std::string sample;
  std::string numeric;
  std::string similarity;
  std::string carrier = "127.0.0.1:7340";
  std::string secret;
  unsigned parallelism = 0;
  std::optional<std::uint64_t> seed;
};

int run_auth(const AuthArgs& args) {
  const std::string secret_path = args.secret.empty() ? default_secret_path(args.user) : args.secret;
  const DeviceSecret secret = load_secret(secret_path);
  if (secret.user_id != args.user) throw UsageError("secret file belongs to a different user");

  std::optional<FeatureSet> sample;
  std::optional<SimilarityFunction> similarity;
  if (secret.meta.mode == Mode::kCaseC) {
    if (args.numeric.empty()) throw UsageError("case-c authentication needs --numeric");
    auto vector = read_numeric_vector(args.numeric);
    if (vector.size() != secret.meta.numeric->features) {
      throw UsageError("numeric vector length differs from the enrolled feature count");
    }
    sample = encode_numeric(vector, secret.meta.numeric->cap);
  } else {
    if (args.sample.empty()) throw UsageError("authentication needs --sample");
    sample = FeatureSet::make(secret.meta, read_nominal_features(args.sample));
    if (secret.meta.mode == Mode::kCaseB) {
      if (args.similarity.empty()) throw UsageError("case-b authentication needs --similarity");
      similarity = read_similarity(args.similarity);
    }
  }

  DeviceAuthRequest request{*sample, similarity, parse_endpoint(args.carrier), secret_path,
                            RespondOptions{args.parallelism}};
  Entropy entropy = make_entropy(args.seed);
  const AuthDecision decision = device_auth(request, entropy);
  std::cout << "matches: " << decision.match_count << "\n"
            << "dissimilarity: " << decision.dissimilarity.to_string() << "\n"
            << "decision: " << (decision.accepted ? "accept" : "reject") << std::endl;
  return decision.accepted ? kExitAccept : kExitReject;
}

struct BenchArgs {
  std::vector<std::size_t> sizes{1, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
  unsigned bits = 1024;
  std::string solver = "gaussian";
  unsigned reps = 3;
  unsigned parallelism = 0;
  std::uint64_t seed = 1;
  std::string csv;
};

int run_bench(const BenchArgs& args) {
  BenchOptions options{args.sizes, args.bits, parse_solver(args.solver), args.reps,
                       args.parallelism, args.seed};
  auto records = bench_run(options, &std::cerr);
  std::cout << format_table(records);
  if (!args.csv.empty()) {
    std::ofstream out(args.csv);
    if (!out) throw UsageError("cannot write " + args.csv);
    out << format_csv(records);
  }
  return 0;
}

std::vector<mpz_class> integers_of(const std::vector<FeatureValue>& values) {
  std::vector<mpz_class> out;
  for (const auto& v : values) out.push_back(v.value());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("ppia"));
  spdlog::set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");

  CLI::App app{"Privacy-preserving implicit authentication: carrier, device and tooling"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the carrier service");
  serve_cmd->add_option("--listen", serve.listen, "Listen address host:port")->capture_default_str();
  serve_cmd->add_option("--data-dir", serve.data_dir, "Profile store directory")->capture_default_str();
  serve_cmd->add_option("--session-timeout", serve.timeout, "Session timeout in seconds")->capture_default_str();
  serve_cmd->add_option("--seed", serve.seed, "Deterministic randomness (test mode only)");

  SetupArgs setup;
  auto* setup_cmd = app.add_subcommand("setup", "Enroll a profile with the carrier");
  setup_cmd->add_option("--user", setup.user, "User id")->required();
  setup_cmd->add_option("--mode", setup.mode, "case-a | case-b | case-c")->capture_default_str();
  setup_cmd->add_option("--features", setup.features, "File of raw features, one per line");
  setup_cmd->add_option("--numeric", setup.numeric, "Case C: file of nonnegative integers");
  setup_cmd->add_option("--cap", setup.cap, "Case C: per-feature maximum M");
  setup_cmd->add_option("--carrier", setup.carrier, "Carrier host:port")->capture_default_str();
  setup_cmd->add_option("--bits", setup.bits, "Paillier modulus size")->capture_default_str();
  setup_cmd->add_option("--secret", setup.secret, "Device secret output file (default <user>.secret)");
  setup_cmd->add_option("--solver", setup.solver, "closed-form | gaussian")->capture_default_str();
  setup_cmd->add_option("--threshold", setup.threshold, "Carrier decision threshold");
  setup_cmd->add_option("--seed", setup.seed, "Deterministic randomness (test mode only)");

  AuthArgs auth;
  auto* auth_cmd = app.add_subcommand("auth", "Authenticate a fresh sample");
  auth_cmd->add_option("--user", auth.user, "User id")->required();
  auth_cmd->add_option("--sample", auth.sample, "File of raw features, one per line");
  auth_cmd->add_option("--numeric", auth.numeric, "Case C: file of nonnegative integers");
  auth_cmd->add_option("--similarity", auth.similarity, "Case B: lines 'y z weight'");
  auth_cmd->add_option("--carrier", auth.carrier, "Carrier host:port")->capture_default_str();
  auth_cmd->add_option("--secret", auth.secret, "Device secret file (default <user>.secret)");
  auth_cmd->add_option("--parallelism", auth.parallelism, "Worker threads, 0 = all cores");
  auth_cmd->add_option("--seed", auth.seed, "Deterministic randomness (test mode only)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time set-up and authentication per set size");
  bench_cmd->add_option("--sizes", bench.sizes, "Set sizes")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--bits", bench.bits, "Paillier modulus size")->capture_default_str();
  bench_cmd->add_option("--solver", bench.solver, "closed-form | gaussian")->capture_default_str();
  bench_cmd->add_option("--reps", bench.reps, "Repetitions per size (median)")->capture_default_str();
  bench_cmd->add_option("--parallelism", bench.parallelism, "Worker threads, 0 = all cores");
  bench_cmd->add_option("--seed", bench.seed, "Seed for keys and data")->capture_default_str();
  bench_cmd->add_option("--csv", bench.csv, "Also write CSV here");

  auto* oracle_cmd = app.add_subcommand("oracle", "Plaintext reference scores");
  oracle_cmd->require_subcommand(1);
  std::string x_file, y_file, sim_file, u_file, v_file;
  auto* inter_cmd = oracle_cmd->add_subcommand("intersection", "|X ∩ Y| of two feature files");
  inter_cmd->add_option("--x", x_file)->required();
  inter_cmd->add_option("--y", y_file)->required();
  auto* weighted_cmd = oracle_cmd->add_subcommand("weighted", "Weighted similarity sum");
  weighted_cmd->add_option("--x", x_file)->required();
  weighted_cmd->add_option("--y", y_file)->required();
  weighted_cmd->add_option("--similarity", sim_file)->required();
  auto* l1_cmd = oracle_cmd->add_subcommand("l1", "L1 distance of two numeric vectors");
  l1_cmd->add_option("--u", u_file)->required();
  l1_cmd->add_option("--v", v_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);

  try {
    if (*serve_cmd) return run_serve(serve);
    if (*setup_cmd) return run_setup(setup);
    if (*auth_cmd) return run_auth(auth);
    if (*bench_cmd) return run_bench(bench);
    if (*inter_cmd) {
      std::cout << oracle::intersection(integers_of(read_nominal_features(x_file)),
                                        integers_of(read_nominal_features(y_file)))
                << std::endl;
      return 0;
    }
    if (*weighted_cmd) {
      const SimilarityFunction sim = read_similarity(sim_file);
      oracle::Similarity l = [&](const mpz_class& x, const mpz_class& y) -> std::uint64_t {
        return sim.weight(FeatureValue::of(x), FeatureValue::of(y));
      };
      std::cout << oracle::weighted(integers_of(read_nominal_features(x_file)),
                                    integers_of(read_nominal_features(y_file)), l)
                << std::endl;
      return 0;
    }
    if (*l1_cmd) {
      std::cout << oracle::l1(read_numeric_vector(u_file), read_numeric_vector(v_file)) << std::endl;
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << std::endl;
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitError;
  }
  return kExitError;
}
