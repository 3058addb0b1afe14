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

#include "crosshash/sim/protocol_run.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "crosshash/errors.hpp"
#include "crosshash/rng.hpp"

namespace crosshash::sim {

namespace {

enum RunStream : std::uint64_t {
  kDropStream = 0x10,
  kPublishStream = 0x11,
  kDeviceStreamBase = 0x1000,
};

void check_grid_fit(const Scenario& scenario, std::uint32_t intervals_per_day) {
  for (const Encounter& enc : scenario.encounters) {
    if (enc.start_interval >= intervals_per_day ||
        enc.duration_intervals > intervals_per_day - enc.start_interval) {
      throw DomainError(
          "scenario does not fit the interval grid of these parameters");
    }
  }
  for (const Sensor& sensor : scenario.sensors) {
    for (const SightingWindow& window : sensor.observed) {
      if (window.start_interval >= intervals_per_day ||
          window.duration_intervals >
              intervals_per_day - window.start_interval) {
        throw DomainError(
            "scenario does not fit the interval grid of these parameters");
      }
    }
  }
}

/// Full-day identifier schedule for every device.
std::vector<std::vector<Bytes16>> device_schedules(
    const Scenario& scenario, const ProtocolParams& params) {
  const auto ipd = static_cast<std::uint32_t>(params.intervals_per_day());
  std::vector<std::vector<Bytes16>> schedules(scenario.device_teks.size());
  for (std::size_t d = 0; d < scenario.device_teks.size(); ++d) {
    const TemporaryExposureKey tek{scenario.device_teks[d],
                                   scenario.day_number};
    schedules[d].reserve(ipd);
    for (std::uint32_t i = 0; i < ipd; ++i) {
      schedules[d].push_back(derive_rpi(tek, i, params).rpi_bytes);
    }
  }
  return schedules;
}

/// Baseline check against raw disclosed keys, using the same k-step window
/// rule and later-interval attribution as the cross-hash scheme.
ExposureResult baseline_check(const ObservationLog& log,
                              std::span<const TemporaryExposureKey> teks,
                              const ProtocolParams& params) {
  const auto ipd = static_cast<std::uint64_t>(params.intervals_per_day());
  const auto k = static_cast<std::uint64_t>(params.k_steps);
  ExposureResult result;
  for (const TemporaryExposureKey& tek : teks) {
    std::set<std::uint64_t> heard;
    for (std::uint32_t i = 0; i < ipd; ++i) {
      const Bytes16 rpi = derive_rpi(tek, i, params).rpi_bytes;
      const std::uint64_t interval = tek.day_number * ipd + i;
      if (const auto* slot = log.at(interval)) {
        if (std::find(slot->begin(), slot->end(), rpi) != slot->end()) {
          heard.insert(interval);
        }
      }
    }
    for (const std::uint64_t interval : heard) {
      if (interval >= k && heard.contains(interval - k)) {
        ++result.matched_cci_count;
        result.matched_intervals.insert(interval);
      }
    }
  }
  result.exposed = result.matched_cci_count >= 1;
  return result;
}

/// In-process equivalent of the padded exchange: candidate reconstruction
/// and attribution are identical, membership is a plain lookup.
ExposureResult direct_check(const ObservationLog& log,
                            const BucketStore& store,
                            const ProtocolParams& params) {
  std::map<Bytes16, std::set<std::uint64_t>> intervals_by_cci;
  for (const auto& cci : candidate_ccis(log, params)) {
    const std::uint64_t interval =
        static_cast<std::uint64_t>(cci.day_number) *
            static_cast<std::uint64_t>(params.intervals_per_day()) +
        cci.interval_index;
    intervals_by_cci[cci.cci_bytes].insert(interval);
  }
  ExposureResult result;
  for (const auto& [cci, intervals] : intervals_by_cci) {
    if (store.contains(cci)) {
      ++result.matched_cci_count;
      result.matched_intervals.insert(intervals.begin(), intervals.end());
    }
  }
  result.exposed = result.matched_cci_count >= 1;
  return result;
}

}  // namespace

ProtocolRunResult run_protocol(const Scenario& scenario,
                               const ProtocolParams& params, Scheme scheme,
                               CheckMode mode) {
  params.validate();
  validate_scenario(scenario);
  const auto ipd = static_cast<std::uint32_t>(params.intervals_per_day());
  check_grid_fit(scenario, ipd);

  const std::vector<std::vector<Bytes16>> schedules =
      device_schedules(scenario, params);
  const DeterministicRandom root(scenario.seed);

  std::vector<ObservationLog> logs(scenario.device_teks.size(),
                                   ObservationLog(params));
  auto drop_rng = root.fork(kDropStream);
  const auto dropped = [&] {
    return drop_rng.uniform01() < scenario.drop_probability;
  };
  for (const Encounter& enc : scenario.encounters) {
    for (std::uint32_t i = enc.start_interval;
         i < enc.start_interval + enc.duration_intervals; ++i) {
      const std::uint64_t interval =
          static_cast<std::uint64_t>(scenario.day_number) * ipd + i;
      if (!dropped()) {
        logs[static_cast<std::size_t>(enc.device_a)].record(
            interval, schedules[static_cast<std::size_t>(enc.device_b)][i]);
      }
      if (!dropped()) {
        logs[static_cast<std::size_t>(enc.device_b)].record(
            interval, schedules[static_cast<std::size_t>(enc.device_a)][i]);
      }
    }
  }

  ProtocolRunResult result;
  result.published.scheme = scheme;
  if (scheme == Scheme::kTekDisclosure) {
    for (const int device : scenario.diagnosed) {
      result.published.teks.push_back(
          {scenario.device_teks[static_cast<std::size_t>(device)],
           scenario.day_number});
    }
    // Upload order carries no information either way; shuffle anyway so no
    // consumer starts relying on it.
    auto publish_rng = root.fork(kPublishStream);
    publish_rng.shuffle(result.published.teks);
  } else {
    result.published.store = std::make_unique<BucketStore>(params);
    for (const int device : scenario.diagnosed) {
      const TemporaryExposureKey tek{
          scenario.device_teks[static_cast<std::size_t>(device)],
          scenario.day_number};
      const auto ccis = derive_tek_ccis(tek, params);
      result.published.store->insert(ccis);
    }
    result.published.ccis = result.published.store->export_all();
    std::sort(result.published.ccis.begin(), result.published.ccis.end());
  }

  result.per_device.reserve(logs.size());
  for (std::size_t d = 0; d < logs.size(); ++d) {
    if (scheme == Scheme::kTekDisclosure) {
      result.per_device.push_back(
          baseline_check(logs[d], result.published.teks, params));
    } else if (mode == CheckMode::kDirect) {
      result.per_device.push_back(
          direct_check(logs[d], *result.published.store, params));
    } else {
      auto device_rng = root.fork(kDeviceStreamBase + d);
      const std::size_t response_pad =
          std::max<std::size_t>(64, result.published.store->total_count());
      LocalTransport transport(*result.published.store, response_pad,
                               device_rng);
      result.per_device.push_back(check_exposure(
          logs[d], transport, params, CheckConfig{}, device_rng));
    }
  }
  return result;
}

}  // namespace crosshash::sim
