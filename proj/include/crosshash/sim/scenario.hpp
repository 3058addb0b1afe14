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

#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "crosshash/identifiers.hpp"

namespace crosshash::sim {

/*
 One simulated day on the rotation-interval grid. Devices broadcast their
 schedule; encounters are the mutual receptions, sensor windows are what a
 stationary passive scanner collects. Multi-day studies concatenate days.
*/

/// Mutual proximity: both devices record each other for the duration.
struct Encounter {
  int device_a = 0;
  int device_b = 0;
  std::uint32_t start_interval = 0;
  std::uint32_t duration_intervals = 1;

  bool operator==(const Encounter&) const = default;
};

/// One contiguous dwell of a device inside a sensor's capture range.
struct SightingWindow {
  int device = 0;
  std::uint32_t start_interval = 0;
  std::uint32_t duration_intervals = 1;

  bool operator==(const SightingWindow&) const = default;
};

struct Sensor {
  int sensor_id = 0;
  std::string location_label;
  std::vector<SightingWindow> observed;

  bool operator==(const Sensor&) const = default;
};

struct Scenario {
  std::uint64_t seed = 0;
  std::uint32_t day_number = 0;
  ProtocolParams params;

  /// Per-reception loss probability. 0 models the reliable capture the
  /// threat analysis assumes; raise it to study flaky scanners.
  double drop_probability = 0.0;

  std::vector<Bytes16> device_teks;  // index is the device id
  std::vector<Encounter> encounters;
  std::vector<Sensor> sensors;
  std::set<int> diagnosed;

  bool operator==(const Scenario&) const = default;
};

/// Draws a reproducible scenario: same seed and arguments, same scenario,
/// byte for byte. Throws DomainError on impossible shapes (encounters with
/// fewer than two devices, rate outside [0, 1], negative counts).
Scenario generate_scenario(std::uint64_t seed, int n_devices, int n_encounters,
                           int n_sensors, double diagnosis_rate,
                           const ProtocolParams& params);

/// Throws DomainError unless every id is in range, every window fits inside
/// the day, every duration is >= 1, and diagnosed devices exist.
void validate_scenario(const Scenario& scenario);

std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);

void save_scenario(const Scenario& scenario,
                   const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace crosshash::sim
