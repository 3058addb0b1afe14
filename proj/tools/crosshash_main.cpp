// Copyright 2026 The Crosshash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <csignal>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "crosshash/errors.hpp"
#include "crosshash/exposure_check.hpp"
#include "crosshash/identifiers.hpp"
#include "crosshash/rng.hpp"
#include "crosshash/server.hpp"
#include "crosshash/sim/adversary.hpp"
#include "crosshash/sim/overhead.hpp"
#include "crosshash/sim/protocol_run.hpp"
#include "crosshash/sim/scenario.hpp"
#include "ref/ref_crypto.hpp"

namespace {

using namespace crosshash;

volatile std::sig_atomic_t g_shutdown = 0;

void handle_signal(int) { g_shutdown = 1; }

std::pair<std::string, int> split_host_port(const std::string& endpoint) {
  const auto colon = endpoint.rfind(':');
  if (colon == std::string::npos || colon == 0 ||
      colon + 1 >= endpoint.size()) {
    throw DomainError("expected HOST:PORT, got '" + endpoint + "'");
  }
  int port = 0;
  try {
    std::size_t used = 0;
    port = std::stoi(endpoint.substr(colon + 1), &used);
    if (used != endpoint.size() - colon - 1) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw DomainError("invalid port in '" + endpoint + "'");
  }
  if (port < 1 || port > 65535) {
    throw DomainError("port must be in [1, 65535]");
  }
  return {endpoint.substr(0, colon), port};
}

sim::Scheme parse_scheme(const std::string& name) {
  if (name == "tek") return sim::Scheme::kTekDisclosure;
  if (name == "cci") return sim::Scheme::kCciDisclosure;
  throw DomainError("scheme must be 'tek' or 'cci'");
}

/// Diagnosis files are lines of "<day_number> <tek-hex>"; '#' comments.
wire::DiagnosisUpload parse_diagnosis_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read diagnosis file " + path);
  wire::DiagnosisUpload upload;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::uint32_t day = 0;
    std::string hex;
    if (!(fields >> day)) continue;  // blank or comment-only line
    if (!(fields >> hex)) {
      throw DomainError(path + ":" + std::to_string(line_number) +
                        ": expected '<day> <tek-hex>'");
    }
    upload.entries.push_back({day, bytes16_from_hex(hex)});
  }
  return upload;
}

/// Observation text files are lines of "<absolute-interval> <rpi-hex>".
ObservationLog parse_observation_text(const std::string& path,
                                      const ProtocolParams& params) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read observation file " + path);
  ObservationLog log(params);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::uint64_t interval = 0;
    std::string hex;
    if (!(fields >> interval)) continue;
    if (!(fields >> hex)) {
      throw DomainError(path + ":" + std::to_string(line_number) +
                        ": expected '<interval> <rpi-hex>'");
    }
    log.record(interval, bytes16_from_hex(hex));
  }
  return log;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out || !(out << content).flush()) {
    throw StoreError("cannot write " + path);
  }
}

nlohmann::json exposure_to_json(const ExposureResult& result) {
  return {{"exposed", result.exposed},
          {"matched_cci_count", result.matched_cci_count},
          {"matched_intervals", result.matched_intervals}};
}

// ---- vectors --------------------------------------------------------------
//
// Golden values computed with the reference oracle only; the library never
// runs here. The case list mirrors tools/gen_golden_vectors.py entry for
// entry, and the tests hold this output, the checked-in JSON, and the
// library's results to the same values.

using ByteVec = std::vector<std::uint8_t>;

ByteVec repeated(std::uint8_t value, std::size_t count) {
  return ByteVec(count, value);
}

ByteVec byte_range(int first, int last_exclusive) {
  ByteVec bytes;
  for (int b = first; b < last_exclusive; ++b) {
    bytes.push_back(static_cast<std::uint8_t>(b));
  }
  return bytes;
}

std::string ref_rpi_hex(const ByteVec& tek, std::uint64_t day,
                        std::uint32_t interval, int rotation_minutes) {
  const std::uint64_t intervals_per_day =
      1440ULL / static_cast<std::uint64_t>(rotation_minutes);
  const auto count = static_cast<std::uint32_t>(
      (day * intervals_per_day + interval) & 0xffffffffULL);
  ByteVec input = tek;
  for (int i = 0; i < 4; ++i) {
    input.push_back(static_cast<std::uint8_t>(count >> (8 * i)));
  }
  const auto digest = refcrypto::sha256(input);
  return to_hex({digest.data(), 16});
}

std::string ref_cci_hex(const ByteVec& older, const ByteVec& newer) {
  ByteVec ikm = older;
  ikm.insert(ikm.end(), newer.begin(), newer.end());
  static constexpr std::uint8_t kInfo[] = {'C', 'C', 'I', 'v', '1'};
  return to_hex(refcrypto::hkdf_sha256(16, ikm, {}, {kInfo, 5}));
}

nlohmann::json reference_vectors() {
  nlohmann::json doc;

  struct HkdfCase {
    const char* name;
    ByteVec ikm, salt, info;
    std::size_t length;
  };
  const HkdfCase hkdf_cases[] = {
      {"rfc5869-a1", repeated(0x0b, 22),
       {0x00, 0x01, 0x02, 0x03, 0x04, 0x05, 0x06, 0x07, 0x08, 0x09, 0x0a,
        0x0b, 0x0c},
       {0xf0, 0xf1, 0xf2, 0xf3, 0xf4, 0xf5, 0xf6, 0xf7, 0xf8, 0xf9},
       42},
      {"rfc5869-a2", byte_range(0x00, 0x50), byte_range(0x60, 0xb0),
       byte_range(0xb0, 0x100), 82},
      {"rfc5869-a3", repeated(0x0b, 22), {}, {}, 42},
  };
  auto& hkdf = doc["hkdf"] = nlohmann::json::array();
  for (const HkdfCase& c : hkdf_cases) {
    hkdf.push_back(
        {{"name", c.name},
         {"ikm", to_hex(c.ikm)},
         {"salt", to_hex(c.salt)},
         {"info", to_hex(c.info)},
         {"length", c.length},
         {"okm", to_hex(refcrypto::hkdf_sha256(c.length, c.ikm, c.salt,
                                               c.info))}});
  }

  struct RpiCase {
    ByteVec tek;
    std::uint64_t day;
    std::uint32_t interval;
    int rotation_minutes;
  };
  const RpiCase rpi_cases[] = {
      {repeated(0x00, 16), 0, 0, 10},
      {repeated(0x00, 16), 0, 1, 10},
      {repeated(0x00, 16), 1, 0, 10},
      {repeated(0x00, 16), 0, 143, 10},
      {byte_range(0x00, 0x10), 5, 77, 10},
      {byte_range(0x00, 0x10), 5, 200, 5},
      {repeated(0xff, 16), 123456, 89, 10},
  };
  auto& rpi = doc["rpi"] = nlohmann::json::array();
  for (const RpiCase& c : rpi_cases) {
    rpi.push_back(
        {{"tek", to_hex(c.tek)},
         {"day", c.day},
         {"interval", c.interval},
         {"rotation_minutes", c.rotation_minutes},
         {"rpi", ref_rpi_hex(c.tek, c.day, c.interval, c.rotation_minutes)}});
  }

  struct CciCase {
    ByteVec older, newer;
  };
  const ByteVec chained_older = from_hex(ref_rpi_hex(repeated(0x00, 16), 0, 0, 10));
  const ByteVec chained_newer = from_hex(ref_rpi_hex(repeated(0x00, 16), 0, 1, 10));
  const CciCase cci_cases[] = {
      {repeated(0x01, 16), repeated(0x02, 16)},
      {repeated(0x02, 16), repeated(0x01, 16)},
      {repeated(0x00, 16), repeated(0x00, 16)},
      {chained_older, chained_newer},
      {byte_range(0x00, 0x10), byte_range(0xf0, 0x100)},
  };
  auto& cci = doc["cci"] = nlohmann::json::array();
  for (const CciCase& c : cci_cases) {
    cci.push_back({{"older", to_hex(c.older)},
                   {"newer", to_hex(c.newer)},
                   {"cci", ref_cci_hex(c.older, c.newer)}});
  }
  return doc;
}

// ---- subcommand bodies ------------------------------------------------------

void run_keygen(const std::optional<std::uint64_t>& seed) {
  Bytes16 key;
  if (seed) {
    DeterministicRandom rng(*seed);
    rng.fill(key);
  } else {
    SystemRandom rng;
    rng.fill(key);
  }
  std::cout << to_hex(key) << "\n";
}

struct DeriveArgs {
  std::string tek_hex;
  std::uint32_t day = 0;
  int rotation_minutes = 10;
  int k_steps = 1;
  bool ccis = false;
};

void run_derive(const DeriveArgs& args) {
  ProtocolParams params;
  params.rotation_minutes = args.rotation_minutes;
  params.k_steps = args.k_steps;
  params.validate();
  const TemporaryExposureKey tek{bytes16_from_hex(args.tek_hex), args.day};
  if (args.ccis) {
    for (const auto& cci : derive_tek_ccis(tek, params)) {
      std::cout << to_hex(cci.cci_bytes) << "\n";
    }
  } else {
    const int ipd = params.intervals_per_day();
    for (int i = 0; i < ipd; ++i) {
      std::cout << to_hex(
                       derive_rpi(tek, static_cast<std::uint32_t>(i), params)
                           .rpi_bytes)
                << "\n";
    }
  }
}

void run_serve(ServerConfig config) {
  ExposureServer server(std::move(config));
  server.start();
  std::cerr << "listening on " << server.config().listen_host << ":"
            << server.port() << "\n";
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
  while (g_shutdown == 0) {
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
  std::cerr << "shutting down\n";
  server.stop();
}

struct CheckArgs {
  std::string server;
  std::string log_path;
  bool log_is_text = false;
  ProtocolParams params;
  CheckConfig config;
  std::optional<std::uint64_t> seed;
};

void run_check(const CheckArgs& args) {
  args.params.validate();
  const auto [host, port] = split_host_port(args.server);
  const ObservationLog log =
      args.log_is_text ? parse_observation_text(args.log_path, args.params)
                       : ObservationLog::load(args.log_path, args.params);
  HttpTransport transport(host, port);

  ExposureResult result;
  if (args.seed) {
    DeterministicRandom rng(*args.seed);
    result = check_exposure(log, transport, args.params, args.config, rng);
  } else {
    SystemRandom rng;
    result = check_exposure(log, transport, args.params, args.config, rng);
  }
  std::cout << exposure_to_json(result).dump(2) << "\n";
}

struct SimulateArgs {
  bool generate = false;
  std::uint64_t seed = 0;
  int devices = 20;
  int encounters = 40;
  int sensors = 5;
  double rate = 0.2;
  ProtocolParams params;
  std::string out_path;

  std::string scenario_path;
  std::string scheme = "cci";
  std::string mode = "direct";
  std::string json_path;
  std::string csv_path;
};

void run_simulate(const SimulateArgs& args) {
  if (args.generate) {
    if (args.out_path.empty()) {
      throw DomainError("--generate requires --out");
    }
    const sim::Scenario scenario =
        sim::generate_scenario(args.seed, args.devices, args.encounters,
                               args.sensors, args.rate, args.params);
    sim::save_scenario(scenario, args.out_path);
    std::cerr << "wrote " << args.out_path << "\n";
    return;
  }

  if (args.scenario_path.empty()) {
    throw DomainError("a scenario file is required (or pass --generate)");
  }
  const sim::Scenario scenario = sim::load_scenario(args.scenario_path);
  const sim::Scheme scheme = parse_scheme(args.scheme);
  sim::CheckMode mode = sim::CheckMode::kDirect;
  if (args.mode == "psi") {
    mode = sim::CheckMode::kPsi;
  } else if (args.mode != "direct") {
    throw DomainError("mode must be 'direct' or 'psi'");
  }

  const sim::ProtocolRunResult run =
      sim::run_protocol(scenario, scenario.params, scheme, mode);
  const sim::LinkabilityReport report =
      sim::adversary_analyze(scenario, run.published, scenario.params);

  nlohmann::json doc;
  doc["scheme"] = args.scheme;
  auto& exposure = doc["exposure"] = nlohmann::json::array();
  for (std::size_t device = 0; device < run.per_device.size(); ++device) {
    nlohmann::json row = exposure_to_json(run.per_device[device]);
    row["device"] = device;
    exposure.push_back(std::move(row));
  }
  doc["linkability"] = nlohmann::json::parse(sim::report_to_json(report));

  const std::string rendered = doc.dump(2) + "\n";
  if (!args.json_path.empty()) write_text_file(args.json_path, rendered);
  if (!args.csv_path.empty()) {
    write_text_file(args.csv_path, sim::report_to_csv(report));
  }
  std::cout << rendered;
}

struct OverheadArgs {
  std::vector<std::uint64_t> users;
  std::string scheme = "tek";
  ProtocolParams params;
  std::optional<std::uint64_t> threshold;
  bool per_user = false;
  bool ratio = false;
};

void run_bench_overhead(const OverheadArgs& args) {
  const sim::Scheme scheme = parse_scheme(args.scheme);
  if (args.ratio) {
    std::cout << sim::identifier_ratio(args.params) << "\n";
    return;
  }
  if (args.per_user) {
    std::cout << sim::bytes_per_user(scheme, args.params) << "\n";
    return;
  }
  if (args.threshold) {
    std::cout << sim::first_user_count_reaching(*args.threshold, scheme,
                                                args.params)
              << "\n";
    return;
  }
  if (args.users.empty()) {
    throw DomainError("pass --users (or --threshold, --per-user, --ratio)");
  }
  std::cout << sim::overhead_to_csv(
      sim::overhead_table(args.users, scheme, args.params));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cross-hashed exposure notification toolkit"};
  app.require_subcommand(1);

  // keygen
  std::optional<std::uint64_t> keygen_seed;
  auto* keygen = app.add_subcommand("keygen", "print a fresh 16-byte daily key");
  keygen->add_option("--seed", keygen_seed,
                     "derive the key from a deterministic stream");

  // derive
  DeriveArgs derive_args;
  auto* derive =
      app.add_subcommand("derive", "expand a daily key into identifiers");
  derive->add_option("--tek", derive_args.tek_hex, "daily key, 32 hex chars")
      ->required();
  derive->add_option("--day", derive_args.day, "day number (default 0)");
  derive->add_option("--rotation", derive_args.rotation_minutes,
                     "rotation period in minutes (default 10)");
  derive->add_option("--k", derive_args.k_steps,
                     "contact threshold in rotation steps (default 1)");
  derive->add_flag("--ccis", derive_args.ccis,
                   "print contact identifiers instead of proximity ids");

  // serve
  std::string serve_config_path;
  ServerConfig serve_overrides;
  std::string serve_store_path;
  bool serve_export = false;
  std::optional<std::uint32_t> serve_day;
  auto* serve = app.add_subcommand("serve", "run the exposure server");
  serve->add_option("--config", serve_config_path, "key=value config file");
  auto* opt_host = serve->add_option("--host", serve_overrides.listen_host);
  auto* opt_port = serve->add_option("--port", serve_overrides.listen_port,
                                     "0 picks an ephemeral port");
  auto* opt_store = serve->add_option("--store", serve_store_path,
                                      "persistent store log path");
  auto* opt_token =
      serve->add_option("--token", serve_overrides.upload_token,
                        "bearer token required on uploads");
  auto* opt_export = serve->add_flag("--export", serve_export,
                                     "enable the full-set export endpoint");
  auto* opt_day = serve->add_option("--current-day", serve_day,
                                    "fix the validation day (testing)");
  auto* opt_rot =
      serve->add_option("--rotation", serve_overrides.params.rotation_minutes);
  auto* opt_k = serve->add_option("--k", serve_overrides.params.k_steps);
  auto* opt_bits =
      serve->add_option("--prefix-bits", serve_overrides.params.prefix_bits);
  auto* opt_ret =
      serve->add_option("--retention", serve_overrides.params.retention_days);
  auto* opt_qpad = serve->add_option("--pad-queries",
                                     serve_overrides.query_pad,
                                     "blinded points per query");
  auto* opt_rpad = serve->add_option("--pad-response",
                                     serve_overrides.response_pad,
                                     "response set size");

  // upload
  std::string upload_file, upload_server, upload_token;
  auto* upload =
      app.add_subcommand("upload", "post a diagnosis file to a server");
  upload->add_option("file", upload_file, "lines of '<day> <tek-hex>'")
      ->required();
  upload->add_option("--server", upload_server, "HOST:PORT")->required();
  upload->add_option("--token", upload_token, "upload bearer token");

  // check
  CheckArgs check_args;
  int check_tolerance = 0;
  auto* check =
      app.add_subcommand("check", "run an exposure check over a log file");
  check->add_option("--server", check_args.server, "HOST:PORT")->required();
  check->add_option("--log", check_args.log_path,
                    "observation log (binary, or text with --text)")
      ->required();
  check->add_flag("--text", check_args.log_is_text,
                  "log file is '<interval> <rpi-hex>' lines");
  check->add_option("--rotation", check_args.params.rotation_minutes);
  check->add_option("--k", check_args.params.k_steps);
  check->add_option("--prefix-bits", check_args.params.prefix_bits);
  check->add_option("--retention", check_args.params.retention_days);
  check->add_option("--tolerance", check_tolerance,
                    "accepted gap deviation, 0 or 1");
  check->add_option("--pad-queries", check_args.config.query_pad,
                    "blinded points per query (default 4)");
  check->add_option("--pad-requests", check_args.config.request_pad,
                    "minimum padded request count (default 8)");
  check->add_option("--threshold", check_args.config.match_threshold,
                    "matches required to flag exposure (default 1)");
  check->add_option("--seed", check_args.seed,
                    "deterministic padding and blinding (testing)");

  // simulate
  SimulateArgs sim_args;
  auto* simulate =
      app.add_subcommand("simulate", "generate or replay an encounter day");
  simulate->add_option("scenario", sim_args.scenario_path, "scenario JSON");
  simulate->add_flag("--generate", sim_args.generate,
                     "write a generated scenario and exit");
  simulate->add_option("--seed", sim_args.seed);
  simulate->add_option("--devices", sim_args.devices);
  simulate->add_option("--encounters", sim_args.encounters);
  simulate->add_option("--sensors", sim_args.sensors);
  simulate->add_option("--rate", sim_args.rate, "diagnosis probability");
  simulate->add_option("--rotation", sim_args.params.rotation_minutes);
  simulate->add_option("--k", sim_args.params.k_steps);
  simulate->add_option("--prefix-bits", sim_args.params.prefix_bits);
  simulate->add_option("--out", sim_args.out_path,
                       "output path for --generate");
  simulate->add_option("--scheme", sim_args.scheme, "tek or cci");
  simulate->add_option("--mode", sim_args.mode,
                       "cci check style: direct or psi");
  simulate->add_option("--json", sim_args.json_path, "also write JSON here");
  simulate->add_option("--csv", sim_args.csv_path,
                       "write the per-infected CSV here");

  // bench-overhead
  OverheadArgs overhead_args;
  auto* bench = app.add_subcommand(
      "bench-overhead", "disclosure download cost for positive-user counts");
  bench->add_option("--users", overhead_args.users,
                    "positive-user counts (repeatable)");
  bench->add_option("--scheme", overhead_args.scheme, "tek or cci");
  bench->add_option("--rotation", overhead_args.params.rotation_minutes);
  bench->add_option("--k", overhead_args.params.k_steps);
  bench->add_option("--retention", overhead_args.params.retention_days);
  bench->add_option("--threshold", overhead_args.threshold,
                    "print the first user count whose total reaches this");
  bench->add_flag("--per-user", overhead_args.per_user,
                  "print bytes per positive user");
  bench->add_flag("--ratio", overhead_args.ratio,
                  "print the per-day identifier blowup ratio");

  // vectors
  std::string vectors_out;
  auto* vectors = app.add_subcommand(
      "vectors", "print golden vectors from the reference oracle");
  vectors->add_option("--out", vectors_out, "write to a file instead");

  try {
    app.parse(argc, argv);

    if (*keygen) {
      run_keygen(keygen_seed);
    } else if (*derive) {
      run_derive(derive_args);
    } else if (*serve) {
      ServerConfig config;
      if (!serve_config_path.empty()) {
        config = load_server_config(serve_config_path);
      }
      apply_env_overrides(config);
      if (*opt_host) config.listen_host = serve_overrides.listen_host;
      if (*opt_port) config.listen_port = serve_overrides.listen_port;
      if (*opt_store) config.store_path = serve_store_path;
      if (*opt_token) config.upload_token = serve_overrides.upload_token;
      if (*opt_export) config.export_enabled = serve_export;
      if (*opt_day) config.current_day = serve_day;
      if (*opt_rot) {
        config.params.rotation_minutes =
            serve_overrides.params.rotation_minutes;
      }
      if (*opt_k) config.params.k_steps = serve_overrides.params.k_steps;
      if (*opt_bits) {
        config.params.prefix_bits = serve_overrides.params.prefix_bits;
      }
      if (*opt_ret) {
        config.params.retention_days = serve_overrides.params.retention_days;
      }
      if (*opt_qpad) config.query_pad = serve_overrides.query_pad;
      if (*opt_rpad) config.response_pad = serve_overrides.response_pad;
      config.params.validate();
      run_serve(std::move(config));
    } else if (*upload) {
      const auto [host, port] = split_host_port(upload_server);
      HttpTransport transport(host, port);
      std::cout << transport.upload_diagnosis(parse_diagnosis_file(upload_file),
                                              upload_token)
                << "\n";
    } else if (*check) {
      if (check_tolerance != 0 && check_tolerance != 1) {
        throw DomainError("--tolerance must be 0 or 1");
      }
      check_args.config.pairing.tolerance = check_tolerance;
      run_check(check_args);
    } else if (*simulate) {
      run_simulate(sim_args);
    } else if (*bench) {
      run_bench_overhead(overhead_args);
    } else if (*vectors) {
      const std::string rendered = reference_vectors().dump(2) + "\n";
      if (vectors_out.empty()) {
        std::cout << rendered;
      } else {
        write_text_file(vectors_out, rendered);
      }
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
