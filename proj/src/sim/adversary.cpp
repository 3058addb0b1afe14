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

#include "crosshash/sim/adversary.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"

#include "crosshash/errors.hpp"

namespace crosshash::sim {

namespace {

/// One deduplicated capture: this sensor heard this identifier during this
/// interval. `device` is ground truth carried for scoring; the linking logic
/// below never reads it.
struct Recording {
  int sensor_id = 0;
  std::uint32_t interval = 0;
  Bytes16 rpi{};
  int device = 0;
};

std::vector<Recording> collect_recordings(const Scenario& scenario,
                                          const ProtocolParams& params) {
  std::vector<std::vector<Bytes16>> schedules(scenario.device_teks.size());
  const auto ipd = static_cast<std::uint32_t>(params.intervals_per_day());
  for (std::size_t d = 0; d < schedules.size(); ++d) {
    const TemporaryExposureKey tek{scenario.device_teks[d],
                                   scenario.day_number};
    schedules[d].reserve(ipd);
    for (std::uint32_t i = 0; i < ipd; ++i) {
      schedules[d].push_back(derive_rpi(tek, i, params).rpi_bytes);
    }
  }

  std::vector<Recording> recordings;
  std::set<std::tuple<int, std::uint32_t, Bytes16>> seen;
  for (const Sensor& sensor : scenario.sensors) {
    for (const SightingWindow& window : sensor.observed) {
      for (std::uint32_t i = window.start_interval;
           i < window.start_interval + window.duration_intervals; ++i) {
        const Bytes16& rpi =
            schedules[static_cast<std::size_t>(window.device)][i];
        if (seen.insert({sensor.sensor_id, i, rpi}).second) {
          recordings.push_back({sensor.sensor_id, i, rpi, window.device});
        }
      }
    }
  }
  return recordings;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

void merge(std::vector<std::size_t>& parent, std::size_t a, std::size_t b) {
  const std::size_t ra = find_root(parent, a);
  const std::size_t rb = find_root(parent, b);
  if (ra != rb) parent[rb] = ra;
}

void finalize(InfectedLinkage& linkage) {
  std::sort(linkage.linked_sightings.begin(), linkage.linked_sightings.end());
  linkage.linked_sightings.erase(
      std::unique(linkage.linked_sightings.begin(),
                  linkage.linked_sightings.end()),
      linkage.linked_sightings.end());
  for (auto& chain : linkage.chains) {
    std::sort(chain.begin(), chain.end());
  }
  std::sort(linkage.chains.begin(), linkage.chains.end(),
            [](const auto& a, const auto& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a < b;
            });
  linkage.chain_sizes.clear();
  for (const auto& chain : linkage.chains) {
    linkage.chain_sizes.push_back(chain.size());
  }
  linkage.largest_linked_chain =
      linkage.chain_sizes.empty() ? 0 : linkage.chain_sizes.front();
  linkage.identified = !linkage.chain_sizes.empty();
}

void analyze_tek(const Scenario& scenario, const PublishedData& published,
                 const ProtocolParams& params,
                 std::span<const Recording> recordings,
                 LinkabilityReport& report) {
  // Whole-day schedule per disclosed key; any recording in it is a hit.
  std::map<Bytes16, std::size_t> rpi_to_key;
  const auto ipd = static_cast<std::uint32_t>(params.intervals_per_day());
  for (std::size_t t = 0; t < published.teks.size(); ++t) {
    for (std::uint32_t i = 0; i < ipd; ++i) {
      rpi_to_key[derive_rpi(published.teks[t], i, params).rpi_bytes] = t;
    }
  }

  // Scoring attribution: disclosed key back to the scenario device.
  std::map<std::size_t, int> key_to_device;
  for (std::size_t t = 0; t < published.teks.size(); ++t) {
    for (std::size_t d = 0; d < scenario.device_teks.size(); ++d) {
      if (published.teks[t].key_bytes == scenario.device_teks[d] &&
          published.teks[t].day_number == scenario.day_number) {
        key_to_device[t] = static_cast<int>(d);
        break;
      }
    }
  }

  std::map<std::size_t, std::vector<const Recording*>> by_key;
  for (const Recording& rec : recordings) {
    if (const auto it = rpi_to_key.find(rec.rpi); it != rpi_to_key.end()) {
      by_key[it->second].push_back(&rec);
    }
  }
  for (const auto& [key, group] : by_key) {
    InfectedLinkage& linkage = report.per_infected[key_to_device.at(key)];
    std::vector<SightingRef> chain;
    for (const Recording* rec : group) {
      chain.push_back({rec->sensor_id, rec->interval});
      linkage.linked_sightings.push_back({rec->sensor_id, rec->interval});
    }
    linkage.chains.push_back(std::move(chain));
  }
}

void analyze_cci(const PublishedData& published, const ProtocolParams& params,
                 std::span<const Recording> recordings,
                 LinkabilityReport& report) {
  const std::set<Bytes16> disclosed(published.ccis.begin(),
                                    published.ccis.end());
  const auto k = static_cast<std::uint32_t>(params.k_steps);

  // Per sensor, recordings k steps apart whose cross-hash was disclosed
  // belong to one (infected) person. Transitive closure over shared
  // recordings grows the chains.
  std::map<std::pair<int, std::uint32_t>, std::vector<std::size_t>> by_slot;
  for (std::size_t r = 0; r < recordings.size(); ++r) {
    by_slot[{recordings[r].sensor_id, recordings[r].interval}].push_back(r);
  }
  std::vector<std::size_t> parent(recordings.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::vector<bool> linked(recordings.size(), false);

  for (const auto& [slot, older_ids] : by_slot) {
    const auto newer_it = by_slot.find({slot.first, slot.second + k});
    if (newer_it == by_slot.end()) continue;
    for (const std::size_t older : older_ids) {
      for (const std::size_t newer : newer_it->second) {
        const Bytes16 cci =
            cross_hash(recordings[older].rpi, recordings[newer].rpi);
        if (disclosed.contains(cci)) {
          merge(parent, older, newer);
          linked[older] = true;
          linked[newer] = true;
        }
      }
    }
  }

  std::map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t r = 0; r < recordings.size(); ++r) {
    if (linked[r]) {
      components[find_root(parent, r)].push_back(r);
    }
  }
  for (const auto& [root, members] : components) {
    // Cross-device members would need a cross-hash collision; attribute the
    // chain to the first member's device.
    InfectedLinkage& linkage =
        report.per_infected[recordings[members.front()].device];
    std::vector<SightingRef> chain;
    for (const std::size_t r : members) {
      chain.push_back({recordings[r].sensor_id, recordings[r].interval});
      linkage.linked_sightings.push_back(
          {recordings[r].sensor_id, recordings[r].interval});
    }
    linkage.chains.push_back(std::move(chain));
  }
}

}  // namespace

LinkabilityReport adversary_analyze(const Scenario& scenario,
                                    const PublishedData& published,
                                    const ProtocolParams& params) {
  params.validate();
  validate_scenario(scenario);

  LinkabilityReport report;
  report.scheme = published.scheme;
  for (const int device : scenario.diagnosed) {
    report.per_infected[device];
  }

  const std::vector<Recording> recordings =
      collect_recordings(scenario, params);
  if (published.scheme == Scheme::kTekDisclosure) {
    analyze_tek(scenario, published, params, recordings, report);
  } else {
    analyze_cci(published, params, recordings, report);
  }
  for (auto& [device, linkage] : report.per_infected) {
    finalize(linkage);
  }
  return report;
}

std::string report_to_json(const LinkabilityReport& report) {
  nlohmann::json doc;
  doc["scheme"] =
      report.scheme == Scheme::kTekDisclosure ? "tek" : "cci";
  auto& rows = doc["per_infected"] = nlohmann::json::array();
  for (const auto& [device, linkage] : report.per_infected) {
    nlohmann::json sightings = nlohmann::json::array();
    for (const SightingRef& ref : linkage.linked_sightings) {
      sightings.push_back(
          {{"sensor_id", ref.sensor_id}, {"interval", ref.interval}});
    }
    nlohmann::json chains = nlohmann::json::array();
    for (const auto& chain : linkage.chains) {
      nlohmann::json members = nlohmann::json::array();
      for (const SightingRef& ref : chain) {
        members.push_back(
            {{"sensor_id", ref.sensor_id}, {"interval", ref.interval}});
      }
      chains.push_back(std::move(members));
    }
    rows.push_back({{"device", device},
                    {"identified", linkage.identified},
                    {"largest_linked_chain", linkage.largest_linked_chain},
                    {"chain_sizes", linkage.chain_sizes},
                    {"chains", std::move(chains)},
                    {"linked_sightings", std::move(sightings)}});
  }
  return doc.dump(2) + "\n";
}

std::string report_to_csv(const LinkabilityReport& report) {
  std::ostringstream out;
  out << "device,identified,linked_sightings,largest_linked_chain,chains\n";
  for (const auto& [device, linkage] : report.per_infected) {
    out << device << ',' << (linkage.identified ? 1 : 0) << ','
        << linkage.linked_sightings.size() << ','
        << linkage.largest_linked_chain << ',' << linkage.chain_sizes.size()
        << '\n';
  }
  return out.str();
}

}  // namespace crosshash::sim
