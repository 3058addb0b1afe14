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

#include "crosshash/sim/overhead.hpp"

#include <sstream>

#include "crosshash/errors.hpp"

namespace crosshash::sim {

namespace {

constexpr std::uint64_t kIdentifierBytes = 16;

}  // namespace

std::uint64_t identifiers_per_day(Scheme scheme,
                                  const ProtocolParams& params) {
  params.validate();
  if (scheme == Scheme::kTekDisclosure) return 1;
  return static_cast<std::uint64_t>(params.intervals_per_day() -
                                    params.k_steps);
}

std::uint64_t identifier_ratio(const ProtocolParams& params) {
  params.validate();
  return static_cast<std::uint64_t>(params.intervals_per_day());
}

std::uint64_t bytes_per_user(Scheme scheme, const ProtocolParams& params) {
  return static_cast<std::uint64_t>(params.retention_days) *
         identifiers_per_day(scheme, params) * kIdentifierBytes;
}

std::vector<OverheadRow> overhead_table(
    std::span<const std::uint64_t> user_counts, Scheme scheme,
    const ProtocolParams& params) {
  const std::uint64_t per_user = bytes_per_user(scheme, params);
  std::vector<OverheadRow> rows;
  rows.reserve(user_counts.size());
  for (const std::uint64_t users : user_counts) {
    rows.push_back(
        {users, scheme, params.rotation_minutes, users * per_user});
  }
  return rows;
}

std::uint64_t first_user_count_reaching(std::uint64_t threshold_bytes,
                                        Scheme scheme,
                                        const ProtocolParams& params) {
  if (threshold_bytes == 0) return 0;
  const std::uint64_t per_user = bytes_per_user(scheme, params);
  return (threshold_bytes + per_user - 1) / per_user;
}

std::string overhead_to_csv(std::span<const OverheadRow> rows) {
  std::ostringstream out;
  out << "positive_users,scheme,rotation_minutes,bytes_total\n";
  for (const OverheadRow& row : rows) {
    out << row.positive_users << ','
        << (row.scheme == Scheme::kTekDisclosure ? "tek" : "cci") << ','
        << row.rotation_minutes << ',' << row.bytes_total << '\n';
  }
  return out.str();
}

}  // namespace crosshash::sim
