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
#include <vector>

#include "crosshash/bytes.hpp"
#include "crosshash/rng.hpp"

namespace crosshash {

/*
 Identifier schedule:

   TEK            16 random bytes, one per device per day.
   RPI_n          first 16 bytes of SHA-256(TEK || LE32(count)), where
                  count = day_number * intervals_per_day + n is the absolute
                  rotation interval since the epoch.
   CCI_n          HKDF-SHA256(ikm = RPI_{n-k} || RPI_n, salt = "",
                  info = "CCIv1", 16 bytes), defined for n in
                  [k, intervals_per_day). The chronological IKM order makes
                  the construction order-sensitive; the info label separates
                  it from other HKDF uses of the same material.
   bucket prefix  the first prefix_bits bits of the CCI, read big-endian.

 A CCI pair never spans a day boundary: the server derives CCIs from a single
 uploaded TEK, so the first k intervals of each day yield none. Holding a CCI
 proves observation of two identifiers k rotations apart, which is what makes
 the minimum contact duration a property of the ciphertext rather than of
 client software.
*/

inline constexpr std::size_t kIdentifierSize = 16;
inline constexpr int kMinutesPerDay = 1440;

struct ProtocolParams {
  int rotation_minutes = 10;  // RPI rotation period
  int k_steps = 1;            // CCI step distance
  int prefix_bits = 16;       // bucket prefix length, in [4, 64]
  int retention_days = 14;

  int intervals_per_day() const { return kMinutesPerDay / rotation_minutes; }
  int min_contact_minutes() const { return rotation_minutes * k_steps; }

  /// Throws DomainError unless the combination is usable: the rotation period
  /// divides the day exactly, 1 <= k_steps < intervals_per_day,
  /// 4 <= prefix_bits <= 64, retention_days >= 1.
  void validate() const;

  bool operator==(const ProtocolParams&) const = default;
};

struct TemporaryExposureKey {
  Bytes16 key_bytes{};
  std::uint32_t day_number = 0;
};

struct RollingProximityIdentifier {
  Bytes16 rpi_bytes{};
  std::uint32_t day_number = 0;
  std::uint32_t interval_index = 0;  // within the day, [0, intervals_per_day)

  std::uint64_t absolute_interval(const ProtocolParams& params) const {
    return static_cast<std::uint64_t>(day_number) *
               static_cast<std::uint64_t>(params.intervals_per_day()) +
           interval_index;
  }
};

struct ConsistentContactIdentifier {
  Bytes16 cci_bytes{};
  std::uint32_t day_number = 0;
  std::uint32_t interval_index = 0;  // index of the later of the two RPIs
};

struct BucketId {
  std::uint64_t prefix_value = 0;
  int prefix_bits = 0;

  auto operator<=>(const BucketId&) const = default;
};

/// Fresh 16-byte key bound to day_number. Randomness failure propagates from
/// the source (SystemRandom aborts the process; there is no fallback).
TemporaryExposureKey generate_tek(RandomSource& rng, std::uint32_t day_number);

/// Throws DomainError when interval_index is outside [0, intervals_per_day).
RollingProximityIdentifier derive_rpi(const TemporaryExposureKey& tek,
                                      std::uint32_t interval_index,
                                      const ProtocolParams& params);

/// The raw cross-hash of two identifiers, chronological order. This is the
/// primitive shared by the typed derivation below and by observers that
/// cannot attribute the identifiers they collected.
Bytes16 cross_hash(const Bytes16& older_rpi, const Bytes16& newer_rpi);

/// Throws DomainError unless newer is exactly k_steps rotation intervals
/// after older on the absolute interval count.
ConsistentContactIdentifier derive_cci(const RollingProximityIdentifier& older,
                                       const RollingProximityIdentifier& newer,
                                       const ProtocolParams& params);

/// All CCIs derivable from one TEK: intervals_per_day - k_steps of them.
std::vector<ConsistentContactIdentifier> derive_tek_ccis(
    const TemporaryExposureKey& tek, const ProtocolParams& params);

/// First prefix_bits bits of the value, big-endian bit order.
/// Throws DomainError when prefix_bits is outside [4, 64].
BucketId prefix_of(const Bytes16& value, int prefix_bits);

BucketId bucket_prefix(const ConsistentContactIdentifier& cci,
                       const ProtocolParams& params);

}  // namespace crosshash
