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

#include "crosshash/sim/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "crosshash/errors.hpp"
#include "crosshash/rng.hpp"

namespace crosshash::sim {

namespace {

// Stream ids for the generator's independent draws. Adding a consumer means
// adding an id; reusing one would correlate draws across fields.
enum GeneratorStream : std::uint64_t {
  kTekStream = 1,
  kEncounterStream = 2,
  kSensorStream = 3,
  kDiagnosisStream = 4,
};

constexpr std::uint32_t kMaxEncounterIntervals = 8;
constexpr std::uint32_t kMaxDwellIntervals = 6;
constexpr std::uint32_t kMaxWindowsPerSensor = 3;

void check_window(const std::string& what, std::uint32_t start,
                  std::uint32_t duration, std::uint32_t intervals_per_day) {
  if (duration < 1) {
    throw DomainError(what + ": duration must be at least one interval");
  }
  if (start >= intervals_per_day ||
      duration > intervals_per_day - start) {
    throw DomainError(what + ": window leaves the simulated day");
  }
}

}  // namespace

Scenario generate_scenario(std::uint64_t seed, int n_devices,
                           int n_encounters, int n_sensors,
                           double diagnosis_rate,
                           const ProtocolParams& params) {
  params.validate();
  if (n_devices < 0 || n_encounters < 0 || n_sensors < 0) {
    throw DomainError("scenario counts must be non-negative");
  }
  if (diagnosis_rate < 0.0 || diagnosis_rate > 1.0) {
    throw DomainError("diagnosis_rate must be in [0, 1]");
  }
  if (n_encounters > 0 && n_devices < 2) {
    throw DomainError("encounters need at least two devices");
  }
  if (n_sensors > 0 && n_devices < 1) {
    throw DomainError("sensors need at least one device to observe");
  }

  const auto ipd = static_cast<std::uint32_t>(params.intervals_per_day());
  const DeterministicRandom root(seed);
  Scenario scenario;
  scenario.seed = seed;
  scenario.day_number = 0;
  scenario.params = params;

  auto tek_rng = root.fork(kTekStream);
  scenario.device_teks.reserve(static_cast<std::size_t>(n_devices));
  for (int d = 0; d < n_devices; ++d) {
    scenario.device_teks.push_back(
        generate_tek(tek_rng, scenario.day_number).key_bytes);
  }

  auto enc_rng = root.fork(kEncounterStream);
  scenario.encounters.reserve(static_cast<std::size_t>(n_encounters));
  for (int e = 0; e < n_encounters; ++e) {
    Encounter enc;
    enc.device_a = static_cast<int>(
        enc_rng.uniform_below(static_cast<std::uint64_t>(n_devices)));
    enc.device_b = static_cast<int>(
        enc_rng.uniform_below(static_cast<std::uint64_t>(n_devices - 1)));
    if (enc.device_b >= enc.device_a) ++enc.device_b;
    enc.start_interval =
        static_cast<std::uint32_t>(enc_rng.uniform_below(ipd));
    const std::uint32_t room =
        std::min(kMaxEncounterIntervals, ipd - enc.start_interval);
    enc.duration_intervals =
        1 + static_cast<std::uint32_t>(enc_rng.uniform_below(room));
    scenario.encounters.push_back(enc);
  }

  auto sensor_rng = root.fork(kSensorStream);
  scenario.sensors.reserve(static_cast<std::size_t>(n_sensors));
  for (int s = 0; s < n_sensors; ++s) {
    Sensor sensor;
    sensor.sensor_id = s;
    sensor.location_label = "site-" + std::to_string(s);
    const std::uint32_t windows =
        1 + static_cast<std::uint32_t>(
                sensor_rng.uniform_below(kMaxWindowsPerSensor));
    for (std::uint32_t w = 0; w < windows; ++w) {
      SightingWindow window;
      window.device = static_cast<int>(
          sensor_rng.uniform_below(static_cast<std::uint64_t>(n_devices)));
      window.start_interval =
          static_cast<std::uint32_t>(sensor_rng.uniform_below(ipd));
      const std::uint32_t room =
          std::min(kMaxDwellIntervals, ipd - window.start_interval);
      window.duration_intervals =
          1 + static_cast<std::uint32_t>(sensor_rng.uniform_below(room));
      sensor.observed.push_back(window);
    }
    scenario.sensors.push_back(std::move(sensor));
  }

  auto diag_rng = root.fork(kDiagnosisStream);
  for (int d = 0; d < n_devices; ++d) {
    if (diag_rng.uniform01() < diagnosis_rate) {
      scenario.diagnosed.insert(d);
    }
  }
  return scenario;
}

void validate_scenario(const Scenario& scenario) {
  scenario.params.validate();
  const auto ipd =
      static_cast<std::uint32_t>(scenario.params.intervals_per_day());
  const int n_devices = static_cast<int>(scenario.device_teks.size());

  if (scenario.drop_probability < 0.0 || scenario.drop_probability > 1.0) {
    throw DomainError("drop_probability must be in [0, 1]");
  }
  for (const Encounter& enc : scenario.encounters) {
    if (enc.device_a < 0 || enc.device_a >= n_devices || enc.device_b < 0 ||
        enc.device_b >= n_devices) {
      throw DomainError("encounter references an unknown device");
    }
    if (enc.device_a == enc.device_b) {
      throw DomainError("encounter pairs a device with itself");
    }
    check_window("encounter", enc.start_interval, enc.duration_intervals,
                 ipd);
  }
  for (const Sensor& sensor : scenario.sensors) {
    for (const SightingWindow& window : sensor.observed) {
      if (window.device < 0 || window.device >= n_devices) {
        throw DomainError("sighting references an unknown device");
      }
      check_window("sighting", window.start_interval,
                   window.duration_intervals, ipd);
    }
  }
  for (int device : scenario.diagnosed) {
    if (device < 0 || device >= n_devices) {
      throw DomainError("diagnosed set references an unknown device");
    }
  }
}

std::string scenario_to_json(const Scenario& scenario) {
  nlohmann::json doc;
  doc["seed"] = scenario.seed;
  doc["day_number"] = scenario.day_number;
  doc["params"] = {
      {"rotation_minutes", scenario.params.rotation_minutes},
      {"k_steps", scenario.params.k_steps},
      {"prefix_bits", scenario.params.prefix_bits},
      {"retention_days", scenario.params.retention_days},
  };
  doc["drop_probability"] = scenario.drop_probability;
  auto& teks = doc["device_teks"] = nlohmann::json::array();
  for (const Bytes16& tek : scenario.device_teks) {
    teks.push_back(to_hex(tek));
  }
  auto& encounters = doc["encounters"] = nlohmann::json::array();
  for (const Encounter& enc : scenario.encounters) {
    encounters.push_back({{"device_a", enc.device_a},
                          {"device_b", enc.device_b},
                          {"start_interval", enc.start_interval},
                          {"duration_intervals", enc.duration_intervals}});
  }
  auto& sensors = doc["sensors"] = nlohmann::json::array();
  for (const Sensor& sensor : scenario.sensors) {
    nlohmann::json observed = nlohmann::json::array();
    for (const SightingWindow& window : sensor.observed) {
      observed.push_back({{"device", window.device},
                          {"start_interval", window.start_interval},
                          {"duration_intervals", window.duration_intervals}});
    }
    sensors.push_back({{"sensor_id", sensor.sensor_id},
                       {"location_label", sensor.location_label},
                       {"observed", std::move(observed)}});
  }
  doc["diagnosed"] = scenario.diagnosed;
  return doc.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("scenario is not valid JSON: ") + e.what());
  }
  Scenario scenario;
  try {
    scenario.seed = doc.at("seed").get<std::uint64_t>();
    scenario.day_number = doc.at("day_number").get<std::uint32_t>();
    const auto& params = doc.at("params");
    scenario.params.rotation_minutes =
        params.at("rotation_minutes").get<int>();
    scenario.params.k_steps = params.at("k_steps").get<int>();
    scenario.params.prefix_bits = params.at("prefix_bits").get<int>();
    scenario.params.retention_days = params.at("retention_days").get<int>();
    scenario.drop_probability =
        doc.value("drop_probability", 0.0);
    for (const auto& tek : doc.at("device_teks")) {
      scenario.device_teks.push_back(
          bytes16_from_hex(tek.get<std::string>()));
    }
    for (const auto& enc : doc.at("encounters")) {
      scenario.encounters.push_back(
          {enc.at("device_a").get<int>(), enc.at("device_b").get<int>(),
           enc.at("start_interval").get<std::uint32_t>(),
           enc.at("duration_intervals").get<std::uint32_t>()});
    }
    for (const auto& sensor : doc.at("sensors")) {
      Sensor parsed;
      parsed.sensor_id = sensor.at("sensor_id").get<int>();
      parsed.location_label = sensor.at("location_label").get<std::string>();
      for (const auto& window : sensor.at("observed")) {
        parsed.observed.push_back(
            {window.at("device").get<int>(),
             window.at("start_interval").get<std::uint32_t>(),
             window.at("duration_intervals").get<std::uint32_t>()});
      }
      scenario.sensors.push_back(std::move(parsed));
    }
    for (const auto& device : doc.at("diagnosed")) {
      scenario.diagnosed.insert(device.get<int>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("scenario JSON is malformed: ") + e.what());
  }
  validate_scenario(scenario);
  return scenario;
}

void save_scenario(const Scenario& scenario,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw StoreError("cannot write scenario file " + path.string());
  }
  out << scenario_to_json(scenario);
  if (!out.flush()) {
    throw StoreError("failed writing scenario file " + path.string());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw StoreError("cannot read scenario file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return scenario_from_json(buffer.str());
}

}  // namespace crosshash::sim
