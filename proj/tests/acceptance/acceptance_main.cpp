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

// Release gate: the protocol's headline guarantees, checked end to end.
// One line per criterion; the exit code is the number of failures. Every
// comparison is exact (integers and byte strings); the per-criterion wall
// budgets are enforced alongside the checks.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "crosshash/bucket_store.hpp"
#include "crosshash/bytes.hpp"
#include "crosshash/exposure_check.hpp"
#include "crosshash/hkdf.hpp"
#include "crosshash/identifiers.hpp"
#include "crosshash/observation_log.hpp"
#include "crosshash/psi.hpp"
#include "crosshash/rng.hpp"
#include "crosshash/server.hpp"
#include "crosshash/sim/adversary.hpp"
#include "crosshash/sim/overhead.hpp"
#include "crosshash/sim/protocol_run.hpp"
#include "crosshash/sim/scenario.hpp"
#include "crosshash/wire.hpp"
#include "ref/ref_crypto.hpp"
#include "support/test_util.hpp"

namespace {

using namespace crosshash;
using test::make_params;

/// Empty on pass, first divergence otherwise.
using Verdict = std::optional<std::string>;

std::string format_seconds(double seconds) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << seconds << " s";
  return out.str();
}

template <typename... Parts>
Verdict fail(Parts&&... parts) {
  std::ostringstream out;
  (out << ... << parts);
  return out.str();
}

// ---- 1: disclosure cost -----------------------------------------------------

Verdict check_overhead_reproduction() {
  const ProtocolParams params = make_params();  // 10 min, 14 days retained

  const auto per_user =
      sim::bytes_per_user(sim::Scheme::kTekDisclosure, params);
  if (per_user != 224) {
    return fail("bytes per user: expected 224, got ", per_user);
  }

  const std::uint64_t threshold = 100000000;
  const auto count = sim::first_user_count_reaching(
      threshold, sim::Scheme::kTekDisclosure, params);
  if (count != 446429) {
    return fail("first count reaching 100 MB: expected 446429, got ", count);
  }
  if (count * per_user != 100000096) {
    return fail("total at 446429 users: expected 100000096, got ",
                count * per_user);
  }
  if ((count - 1) * per_user >= threshold) {
    return fail("446428 users already reach the threshold");
  }
  return std::nullopt;
}

// ---- 2: identifier blowup ---------------------------------------------------

Verdict check_blowup_ratios() {
  const ProtocolParams ten = make_params(10);
  const ProtocolParams five = make_params(5);

  if (sim::identifier_ratio(ten) != 144 || sim::identifier_ratio(five) != 288) {
    return fail("ratios: expected 144/288, got ", sim::identifier_ratio(ten),
                "/", sim::identifier_ratio(five));
  }
  for (int k = 1; k <= 5; ++k) {
    const ProtocolParams ten_k = make_params(10, k);
    const ProtocolParams five_k = make_params(5, k);
    if (sim::identifiers_per_day(sim::Scheme::kTekDisclosure, ten_k) != 1) {
      return fail("key scheme must disclose one identifier per day");
    }
    const auto ten_count =
        sim::identifiers_per_day(sim::Scheme::kCciDisclosure, ten_k);
    const auto five_count =
        sim::identifiers_per_day(sim::Scheme::kCciDisclosure, five_k);
    if (ten_count != static_cast<std::uint64_t>(144 - k)) {
      return fail("k=", k, ": expected ", 144 - k, " per day at 10 min, got ",
                  ten_count);
    }
    if (five_count != static_cast<std::uint64_t>(288 - k)) {
      return fail("k=", k, ": expected ", 288 - k, " per day at 5 min, got ",
                  five_count);
    }
  }
  return std::nullopt;
}

// ---- 3: minimum contact duration, end to end --------------------------------

Verdict check_minimum_duration() {
  constexpr std::uint32_t kToday = 25000;

  for (int k = 1; k <= 5; ++k) {
    ServerConfig config;
    config.params = make_params(10, k);
    config.listen_port = 0;
    config.current_day = kToday;
    config.response_pad = 64;  // buckets stay tiny at 16-bit prefixes
    ExposureServer server(config);
    server.start();
    HttpTransport transport("127.0.0.1", server.port());

    DeterministicRandom rng(9000 + static_cast<std::uint64_t>(k));
    for (int d = 1; d <= 20; ++d) {
      const auto tek = generate_tek(rng, kToday - 1);
      wire::DiagnosisUpload upload;
      upload.entries.push_back({tek.day_number, tek.key_bytes});
      const auto inserted = transport.upload_diagnosis(upload);
      if (inserted != static_cast<std::uint32_t>(144 - k)) {
        return fail("k=", k, " d=", d, ": upload inserted ", inserted,
                    ", expected ", 144 - k);
      }

      ObservationLog log(config.params);
      const std::uint32_t start = 40;
      for (int n = 0; n < d; ++n) {
        const auto rpi =
            derive_rpi(tek, start + static_cast<std::uint32_t>(n),
                       config.params);
        log.record(rpi.absolute_interval(config.params), rpi.rpi_bytes);
      }

      DeterministicRandom check_rng(
          static_cast<std::uint64_t>(k) * 100 + static_cast<std::uint64_t>(d));
      const auto result = check_exposure(log, transport, config.params,
                                         CheckConfig{}, check_rng);

      const auto expected =
          static_cast<std::size_t>(std::max(0, d - k));
      if (result.matched_cci_count != expected) {
        return fail("k=", k, " d=", d, ": expected ", expected,
                    " matches, got ", result.matched_cci_count);
      }
      if (result.exposed != (d > k)) {
        return fail("k=", k, " d=", d, ": exposed flag wrong");
      }
      std::set<std::uint64_t> expected_intervals;
      const std::uint64_t base =
          static_cast<std::uint64_t>(tek.day_number) * 144 + start;
      for (int n = k; n < d; ++n) {
        expected_intervals.insert(base + static_cast<std::uint64_t>(n));
      }
      if (result.matched_intervals != expected_intervals) {
        return fail("k=", k, " d=", d, ": matched interval set diverges");
      }
    }
    server.stop();
  }
  return std::nullopt;
}

// ---- 4: blinded exchange vs brute force -------------------------------------

Verdict check_psi_oracle_equivalence() {
  DeterministicRandom rng(77001);
  for (int trial = 0; trial < 110; ++trial) {
    const std::size_t query_count = rng.uniform_below(9);       // <= 8
    const std::size_t bucket_size = rng.uniform_below(1025);    // <= 1024
    const std::size_t overlap =
        rng.uniform_below(std::min(query_count, bucket_size) + 1);

    std::vector<Bytes16> queries;
    for (std::size_t i = 0; i < query_count; ++i) {
      queries.push_back(test::random_bytes16(rng));
    }
    std::vector<Bytes16> bucket(queries.begin(),
                                queries.begin() + static_cast<long>(overlap));
    while (bucket.size() < bucket_size) {
      bucket.push_back(test::random_bytes16(rng));
    }
    rng.shuffle(bucket);

    auto [states, query] = psi::client_blind(queries, 8, rng);
    const auto response = psi::server_respond(bucket, query, 1024, rng);
    const auto matched = psi::client_match(states, response);

    // Independent oracle: plain set intersection.
    const std::set<Bytes16> bucket_set(bucket.begin(), bucket.end());
    std::set<Bytes16> expected;
    for (const auto& q : queries) {
      if (bucket_set.contains(q)) expected.insert(q);
    }
    if (matched != expected) {
      return fail("trial ", trial, ": expected ", expected.size(),
                  " matches, got ", matched.size());
    }
  }
  return std::nullopt;
}

// ---- 5: shape obliviousness -------------------------------------------------

Verdict check_shape_obliviousness() {
  DeterministicRandom rng(77002);
  std::map<std::pair<std::size_t, std::size_t>,
           std::pair<std::size_t, std::size_t>>
      sizes_by_pads;

  for (int configuration = 0; configuration < 50; ++configuration) {
    const std::size_t query_pad = 1 + rng.uniform_below(8);
    const std::size_t response_pad = 1 + rng.uniform_below(64);

    std::set<std::size_t> request_sizes;
    std::set<std::size_t> response_sizes;
    for (int draw = 0; draw < 3; ++draw) {
      const std::size_t real = rng.uniform_below(query_pad + 1);
      std::vector<Bytes16> ccis;
      for (std::size_t i = 0; i < real; ++i) {
        ccis.push_back(test::random_bytes16(rng));
      }
      auto [states, query] = psi::client_blind(ccis, query_pad, rng);
      const BucketId bucket{rng.uniform_below(1ULL << 16), 16};
      request_sizes.insert(wire::encode_query(bucket, query).size());

      const std::size_t occupancy = rng.uniform_below(response_pad + 1);
      std::vector<Bytes16> stored;
      for (std::size_t i = 0; i < occupancy; ++i) {
        stored.push_back(test::random_bytes16(rng));
      }
      const auto response =
          psi::server_respond(stored, query, response_pad, rng);
      response_sizes.insert(wire::encode_response(response).size());
    }

    if (request_sizes.size() != 1 || response_sizes.size() != 1) {
      return fail("configuration ", configuration, " (pads ", query_pad, "/",
                  response_pad, "): sizes varied with content");
    }
    const auto key = std::pair{query_pad, response_pad};
    const auto value =
        std::pair{*request_sizes.begin(), *response_sizes.begin()};
    if (const auto it = sizes_by_pads.find(key); it != sizes_by_pads.end()) {
      if (it->second != value) {
        return fail("pads ", query_pad, "/", response_pad,
                    " produced two different shapes across configurations");
      }
    } else {
      sizes_by_pads.emplace(key, value);
    }
  }
  return std::nullopt;
}

// ---- 6: no tracking across dwell windows ------------------------------------

std::vector<std::pair<std::uint32_t, std::uint32_t>> merged_dwells(
    const sim::Sensor& sensor, int device) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> spans;
  for (const auto& window : sensor.observed) {
    if (window.device != device) continue;
    spans.emplace_back(window.start_interval,
                       window.start_interval + window.duration_intervals);
  }
  std::sort(spans.begin(), spans.end());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> merged;
  for (const auto& span : spans) {
    if (!merged.empty() && span.first <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, span.second);
    } else {
      merged.push_back(span);
    }
  }
  return merged;
}

Verdict check_tracking_elimination() {
  const ProtocolParams params = make_params();  // k = 1

  // Canonical day: one infected device, ten scanners, two rotations each.
  sim::Scenario canonical;
  canonical.seed = 1;
  canonical.day_number = 50;
  canonical.params = params;
  DeterministicRandom tek_rng(880);
  Bytes16 tek;
  tek_rng.fill(tek);
  canonical.device_teks.push_back(tek);
  canonical.diagnosed = {0};
  for (int s = 0; s < 10; ++s) {
    sim::Sensor sensor;
    sensor.sensor_id = s;
    sensor.location_label = "site-" + std::to_string(s);
    sensor.observed.push_back({0, static_cast<std::uint32_t>(10 + 4 * s), 2});
    canonical.sensors.push_back(sensor);
  }
  sim::validate_scenario(canonical);

  const auto tek_run =
      sim::run_protocol(canonical, params, sim::Scheme::kTekDisclosure);
  const auto tek_report =
      sim::adversary_analyze(canonical, tek_run.published, params);
  const auto& tek_linkage = tek_report.per_infected.at(0);
  if (!tek_linkage.identified || tek_linkage.largest_linked_chain != 20 ||
      tek_linkage.chain_sizes != std::vector<std::size_t>{20}) {
    return fail("canonical key disclosure: expected one 20-sighting chain, "
                "largest got ",
                tek_linkage.largest_linked_chain);
  }

  const auto cci_run =
      sim::run_protocol(canonical, params, sim::Scheme::kCciDisclosure);
  const auto cci_report =
      sim::adversary_analyze(canonical, cci_run.published, params);
  const auto& cci_linkage = cci_report.per_infected.at(0);
  if (cci_linkage.largest_linked_chain != 2 ||
      cci_linkage.chain_sizes != std::vector<std::size_t>(10, 2)) {
    return fail("canonical cross-hash disclosure: expected ten chains of 2, "
                "largest got ",
                cci_linkage.largest_linked_chain, " across ",
                cci_linkage.chain_sizes.size(), " chains");
  }

  // Generalized: across random days, no chain leaves one merged dwell.
  std::size_t chains_checked = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const auto scenario =
        sim::generate_scenario(seed, 5, 0, 4, 0.6, params);
    const auto run =
        sim::run_protocol(scenario, params, sim::Scheme::kCciDisclosure);
    const auto report =
        sim::adversary_analyze(scenario, run.published, params);

    for (const auto& [device, linkage] : report.per_infected) {
      for (const auto& chain : linkage.chains) {
        ++chains_checked;
        const int sensor_id = chain.front().sensor_id;
        for (const auto& sighting : chain) {
          if (sighting.sensor_id != sensor_id) {
            return fail("seed ", seed, ": a chain spans two sensors");
          }
        }
        const auto dwells = merged_dwells(
            scenario.sensors[static_cast<std::size_t>(sensor_id)], device);
        const bool contained = std::any_of(
            dwells.begin(), dwells.end(), [&](const auto& span) {
              return std::all_of(
                  chain.begin(), chain.end(), [&](const sim::SightingRef& s) {
                    return span.first <= s.interval && s.interval < span.second;
                  });
            });
        if (!contained) {
          return fail("seed ", seed, ": a chain spans two dwell windows");
        }
      }
    }
  }
  if (chains_checked < 1000) {
    return fail("sweep produced only ", chains_checked,
                " chains; not representative");
  }
  return std::nullopt;
}

// ---- 7: dwell threshold for identification ----------------------------------

Verdict check_dwell_threshold() {
  std::size_t short_trials = 0;
  std::size_t long_trials = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 1 + trial % 5;
    const ProtocolParams params = make_params(10, k);
    const bool long_dwell = (trial / 5) % 2 == 0;
    const auto dwell = static_cast<std::uint32_t>(
        long_dwell ? k + 1 + (trial / 10) % 3 : 1 + (trial / 10) % k);

    sim::Scenario scenario;
    scenario.seed = static_cast<std::uint64_t>(trial);
    scenario.day_number = 60;
    scenario.params = params;
    DeterministicRandom rng(40000 + static_cast<std::uint64_t>(trial));
    Bytes16 tek;
    rng.fill(tek);
    scenario.device_teks.push_back(tek);
    scenario.diagnosed = {0};
    sim::Sensor sensor;
    sensor.sensor_id = 0;
    sensor.location_label = "gate";
    const auto start = static_cast<std::uint32_t>((trial * 7) % 120);
    sensor.observed.push_back({0, start, dwell});
    scenario.sensors.push_back(sensor);

    const auto run =
        sim::run_protocol(scenario, params, sim::Scheme::kCciDisclosure);
    const auto report =
        sim::adversary_analyze(scenario, run.published, params);
    const bool identified = report.per_infected.at(0).identified;

    if (long_dwell) {
      ++long_trials;
      if (!identified) {
        return fail("trial ", trial, ": dwell ", dwell, " > k=", k,
                    " was not identified");
      }
    } else {
      ++short_trials;
      if (identified) {
        return fail("trial ", trial, ": dwell ", dwell, " <= k=", k,
                    " was identified");
      }
    }
  }
  if (short_trials < 400 || long_trials < 400) {
    return fail("unbalanced trial mix: ", short_trials, " short / ",
                long_trials, " long");
  }
  return std::nullopt;
}

// ---- 8: golden vectors, three ways ------------------------------------------

Verdict check_golden_vectors() {
  const auto doc = test::load_golden_vectors();

  for (const auto& item : doc["hkdf"]) {
    const Bytes ikm = from_hex(item["ikm"].get<std::string>());
    const Bytes salt = from_hex(item["salt"].get<std::string>());
    const Bytes info = from_hex(item["info"].get<std::string>());
    const auto expected = item["okm"].get<std::string>();

    Bytes okm(item["length"].get<std::size_t>());
    hkdf_sha256(okm, ikm, salt, info);
    if (to_hex(okm) != expected) {
      return fail(item["name"].get<std::string>(), ": library output differs");
    }
    if (to_hex(refcrypto::hkdf_sha256(okm.size(), ikm, salt, info)) !=
        expected) {
      return fail(item["name"].get<std::string>(),
                  ": reference output differs");
    }
  }

  for (const auto& item : doc["rpi"]) {
    const ProtocolParams params =
        make_params(item["rotation_minutes"].get<int>());
    const TemporaryExposureKey tek{
        bytes16_from_hex(item["tek"].get<std::string>()),
        item["day"].get<std::uint32_t>()};
    const auto interval = item["interval"].get<std::uint32_t>();
    const auto expected = item["rpi"].get<std::string>();

    if (to_hex(derive_rpi(tek, interval, params).rpi_bytes) != expected) {
      return fail("rpi day ", tek.day_number, " interval ", interval,
                  ": library output differs");
    }
    Bytes preimage(tek.key_bytes.begin(), tek.key_bytes.end());
    const auto count = static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(tek.day_number) *
             static_cast<std::uint64_t>(params.intervals_per_day()) +
         interval) &
        0xffffffffULL);
    for (int i = 0; i < 4; ++i) {
      preimage.push_back(static_cast<std::uint8_t>(count >> (8 * i)));
    }
    const auto digest = refcrypto::sha256(preimage);
    if (to_hex({digest.data(), 16}) != expected) {
      return fail("rpi day ", tek.day_number, " interval ", interval,
                  ": reference output differs");
    }
  }

  for (const auto& item : doc["cci"]) {
    const auto older = bytes16_from_hex(item["older"].get<std::string>());
    const auto newer = bytes16_from_hex(item["newer"].get<std::string>());
    const auto expected = item["cci"].get<std::string>();

    if (to_hex(cross_hash(older, newer)) != expected) {
      return fail("cci ", item["older"].get<std::string>(),
                  ": library output differs");
    }
    Bytes ikm(older.begin(), older.end());
    ikm.insert(ikm.end(), newer.begin(), newer.end());
    static constexpr std::uint8_t kInfo[] = {'C', 'C', 'I', 'v', '1'};
    if (to_hex(refcrypto::hkdf_sha256(16, ikm, {}, {kInfo, 5})) != expected) {
      return fail("cci ", item["older"].get<std::string>(),
                  ": reference output differs");
    }
  }
  return std::nullopt;
}

// ---- 9: bucket store laws under churn ---------------------------------------

Verdict check_store_round_trip() {
  test::TempDir dir("acceptance-store");
  const auto path = dir.file("buckets.log");
  ProtocolParams params = make_params(10, 1, 6);
  params.retention_days = 5;

  std::map<Bytes16, std::uint32_t> model;
  DeterministicRandom rng(77009);
  std::uint32_t day = 200;

  {
    BucketStore store(params, path);
    for (int op = 0; op < 1200; ++op) {
      const auto action = rng.uniform_below(10);
      if (action < 6) {
        std::vector<CciRecord> batch;
        const auto n = 1 + rng.uniform_below(8);
        for (std::uint64_t i = 0; i < n; ++i) {
          CciRecord record;
          rng.fill(record.cci);
          record.day_number = day;
          batch.push_back(record);
        }
        std::size_t expected_new = 0;
        for (const auto& record : batch) {
          if (!model.contains(record.cci)) ++expected_new;
        }
        if (store.insert_records(batch) != expected_new) {
          return fail("op ", op, ": insert count diverged from the model");
        }
        for (const auto& record : batch) {
          model.emplace(record.cci, record.day_number);
        }
      } else if (action < 8) {
        const BucketId bucket{rng.uniform_below(1ULL << 6), 6};
        std::set<Bytes16> expected;
        for (const auto& [cci, record_day] : model) {
          if (prefix_of(cci, 6).prefix_value == bucket.prefix_value) {
            expected.insert(cci);
          }
        }
        const auto got = store.query(bucket);
        if (std::set<Bytes16>(got.begin(), got.end()) != expected ||
            got.size() != expected.size()) {
          return fail("op ", op, ": bucket ", bucket.prefix_value,
                      " diverged from brute force");
        }
      } else if (action < 9) {
        day += static_cast<std::uint32_t>(rng.uniform_below(2));
        std::size_t expected_dropped = 0;
        for (auto it = model.begin(); it != model.end();) {
          if (it->second + static_cast<std::uint32_t>(params.retention_days) <=
              day) {
            it = model.erase(it);
            ++expected_dropped;
          } else {
            ++it;
          }
        }
        if (store.expire(day) != expected_dropped) {
          return fail("op ", op, ": expire count diverged from the model");
        }
      } else {
        Bytes16 probe;
        rng.fill(probe);
        if (store.contains(probe) != model.contains(probe)) {
          return fail("op ", op, ": membership probe diverged");
        }
      }
      if (store.total_count() != model.size()) {
        return fail("op ", op, ": size law broken: store ",
                    store.total_count(), " vs model ", model.size());
      }
    }
  }

  // Restart: the log must replay to the identical store.
  BucketStore reopened(params, path);
  if (reopened.total_count() != model.size()) {
    return fail("restart: total ", reopened.total_count(), " vs model ",
                model.size());
  }
  std::size_t partition_total = 0;
  std::set<Bytes16> union_of_buckets;
  for (std::uint64_t prefix = 0; prefix < (1ULL << 6); ++prefix) {
    const auto bucket_contents = reopened.query(BucketId{prefix, 6});
    partition_total += bucket_contents.size();
    for (const auto& cci : bucket_contents) {
      if (prefix_of(cci, 6).prefix_value != prefix) {
        return fail("restart: an identifier sits in the wrong partition");
      }
      if (!union_of_buckets.insert(cci).second) {
        return fail("restart: an identifier appears in two partitions");
      }
      if (!model.contains(cci)) {
        return fail("restart: an identifier the model never held");
      }
    }
  }
  if (partition_total != model.size()) {
    return fail("restart: partitions tile ", partition_total,
                " identifiers, model holds ", model.size());
  }
  return std::nullopt;
}

struct Criterion {
  int number;
  std::string label;
  double budget_seconds;
  std::function<Verdict()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "overhead reproduction (224 B/user; 446,429 users -> 100,000,096 B)",
       1.0, check_overhead_reproduction},
      {2, "per-day identifier blowup (144/288 RPIs; 144-k / 288-k CCIs)", 1.0,
       check_blowup_ratios},
      {3, "minimum contact duration end-to-end (d in 1..20, k in 1..5)", 30.0,
       check_minimum_duration},
      {4, "blinded bucket exchange equals brute-force intersection", 60.0,
       check_psi_oracle_equivalence},
      {5, "message shapes depend only on the pads", 30.0,
       check_shape_obliviousness},
      {6, "full-day tracking eliminated; chains confined to dwell windows",
       120.0, check_tracking_elimination},
      {7, "dwell > k identifies always; dwell <= k never", 120.0,
       check_dwell_threshold},
      {8, "golden vectors byte-exact against the reference oracle", 1.0,
       check_golden_vectors},
      {9, "bucket store laws under 1,200 randomized operations + restart",
       30.0, check_store_round_trip},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict verdict;
    try {
      verdict = criterion.body();
    } catch (const std::exception& e) {
      verdict = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (!verdict && elapsed >= criterion.budget_seconds) {
      verdict = "exceeded the " + format_seconds(criterion.budget_seconds) +
                " budget";
    }
    if (verdict) {
      ++failures;
      std::cout << "FAIL  " << criterion.number << "  " << criterion.label
                << ": " << *verdict << "  [" << format_seconds(elapsed) << "]"
                << std::endl;
    } else {
      std::cout << "PASS  " << criterion.number << "  " << criterion.label
                << "  [" << format_seconds(elapsed) << "]" << std::endl;
    }
  }
  return failures;
}
