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
#include <span>
#include <string>
#include <vector>

#include "crosshash/identifiers.hpp"
#include "crosshash/sim/protocol_run.hpp"

namespace crosshash::sim {

/*
 Download cost of the disclosure list, by scheme:

   key scheme         retention_days keys of 16 bytes per positive user
   cross-hash scheme  retention_days * (intervals_per_day - k_steps)
                      identifiers of 16 bytes per positive user

 Both grow linearly in the number of positive users; the cross-hash scheme
 trades a roughly intervals_per_day blowup for unlinkability.
*/

struct OverheadRow {
  std::uint64_t positive_users = 0;
  Scheme scheme = Scheme::kTekDisclosure;
  int rotation_minutes = 0;
  std::uint64_t bytes_total = 0;

  bool operator==(const OverheadRow&) const = default;
};

/// Identifiers one positive user discloses per day: 1 key, or
/// intervals_per_day - k_steps cross-hashes.
std::uint64_t identifiers_per_day(Scheme scheme, const ProtocolParams& params);

/// The headline per-day blowup, ignoring the k_steps pair deficit:
/// intervals_per_day (144 at 10-minute rotation, 288 at 5).
std::uint64_t identifier_ratio(const ProtocolParams& params);

std::uint64_t bytes_per_user(Scheme scheme, const ProtocolParams& params);

std::vector<OverheadRow> overhead_table(
    std::span<const std::uint64_t> user_counts, Scheme scheme,
    const ProtocolParams& params);

/// Smallest positive-user count whose total download reaches the threshold.
std::uint64_t first_user_count_reaching(std::uint64_t threshold_bytes,
                                        Scheme scheme,
                                        const ProtocolParams& params);

std::string overhead_to_csv(std::span<const OverheadRow> rows);

}  // namespace crosshash::sim
