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
#include <map>
#include <vector>

#include "crosshash/identifiers.hpp"

namespace crosshash {

/// What a device heard: one record per (absolute interval, identifier).
/// Duplicates collapse; records older than the retention window are pruned
/// as new ones arrive.
///
/// File form: frames of [u64-BE absolute interval || 16-byte identifier].
class ObservationLog {
 public:
  explicit ObservationLog(const ProtocolParams& params);

  /// Throws DomainError on a malformed identifier length (file import path);
  /// the typed overload cannot be malformed.
  void record(std::uint64_t absolute_interval, const Bytes16& rpi);

  std::size_t size() const;
  bool empty() const { return size() == 0; }

  /// Records at exactly this interval, unspecified order.
  const std::vector<Bytes16>* at(std::uint64_t interval) const;

  const std::map<std::uint64_t, std::vector<Bytes16>>& by_interval() const {
    return records_;
  }

  const ProtocolParams& params() const { return params_; }

  void save(const std::filesystem::path& path) const;
  static ObservationLog load(const std::filesystem::path& path,
                             const ProtocolParams& params);

 private:
  void prune();

  ProtocolParams params_;
  std::map<std::uint64_t, std::vector<Bytes16>> records_;
  std::uint64_t latest_interval_ = 0;
  std::size_t count_ = 0;
};

struct PairingOptions {
  /// Accepted deviation from the exact k_steps gap. 0 keeps the strict
  /// schedule; 1 tolerates scanners that straddle a rotation boundary.
  int tolerance = 0;

  /// Upper bound on candidate pairs formed per newer interval, to contain
  /// the cross-device blowup in dense environments.
  std::size_t per_interval_cap = 64;
};

/// Every cross-hash the device can form from its log: ordered pairs of
/// records k_steps apart (within tolerance). The device cannot attribute
/// identifiers to their senders, so pairs mix devices freely; mixed pairs
/// are chaff that never matches a disclosed CCI.
std::vector<ConsistentContactIdentifier> candidate_ccis(
    const ObservationLog& log, const ProtocolParams& params,
    const PairingOptions& options = {});

}  // namespace crosshash
