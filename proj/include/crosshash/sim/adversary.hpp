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

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "crosshash/sim/protocol_run.hpp"
#include "crosshash/sim/scenario.hpp"

namespace crosshash::sim {

/*
 The passive-scanner adversary: a fleet of sensors that recorded every
 identifier broadcast inside their windows, now combining those recordings
 with the public disclosure.

   key disclosure    recompute each disclosed key's whole-day schedule and
                     match it against every recording. Every sighting of an
                     infected device, at every sensor, collapses into one
                     identity: full-day tracking.

   cross-hash        the adversary can only cross-hash its own recordings
   disclosure        and compare against the published set. A match needs
                     the same device heard by the same sensor at both ends
                     of a k-step window, so linking stops at the edge of
                     each contiguous dwell.

 The analysis below touches ground truth (which device a recording belongs
 to) only when attributing results for scoring, never when linking.
*/

struct SightingRef {
  int sensor_id = 0;
  std::uint32_t interval = 0;  // within-day index

  auto operator<=>(const SightingRef&) const = default;
};

/// What the adversary pinned on one diagnosed device.
struct InfectedLinkage {
  bool identified = false;

  /// Sightings tied to the infection, sorted, deduplicated.
  std::vector<SightingRef> linked_sightings;

  /// The mutually-linked groups: each is a set of sightings the adversary
  /// knows belong to one person. Members sorted; groups largest first.
  std::vector<std::vector<SightingRef>> chains;

  /// chains, by size. Kept alongside for cheap reporting.
  std::vector<std::size_t> chain_sizes;

  std::size_t largest_linked_chain = 0;
};

struct LinkabilityReport {
  Scheme scheme = Scheme::kTekDisclosure;

  /// One entry per diagnosed device, including devices the adversary never
  /// managed to link (identified = false).
  std::map<int, InfectedLinkage> per_infected;
};

LinkabilityReport adversary_analyze(const Scenario& scenario,
                                    const PublishedData& published,
                                    const ProtocolParams& params);

/// Stable text emissions: same report, same bytes.
std::string report_to_json(const LinkabilityReport& report);
std::string report_to_csv(const LinkabilityReport& report);

}  // namespace crosshash::sim
