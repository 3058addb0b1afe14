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

#include "crosshash/identifiers.hpp"

#include <sodium.h>

#include <cstring>
#include <string>

#include "crosshash/detail/sodium_guard.hpp"
#include "crosshash/errors.hpp"
#include "crosshash/hkdf.hpp"

namespace crosshash {

namespace {

constexpr char kCciInfoLabel[] = "CCIv1";

}  // namespace

void ProtocolParams::validate() const {
  if (rotation_minutes <= 0 || kMinutesPerDay % rotation_minutes != 0) {
    throw DomainError("rotation_minutes must divide " +
                      std::to_string(kMinutesPerDay) + " exactly, got " +
                      std::to_string(rotation_minutes));
  }
  if (k_steps < 1 || k_steps >= intervals_per_day()) {
    throw DomainError("k_steps must be in [1, intervals_per_day), got " +
                      std::to_string(k_steps));
  }
  if (prefix_bits < 4 || prefix_bits > 64) {
    throw DomainError("prefix_bits must be in [4, 64], got " +
                      std::to_string(prefix_bits));
  }
  if (retention_days < 1) {
    throw DomainError("retention_days must be positive, got " +
                      std::to_string(retention_days));
  }
}

TemporaryExposureKey generate_tek(RandomSource& rng, std::uint32_t day_number) {
  TemporaryExposureKey tek;
  tek.day_number = day_number;
  rng.fill(tek.key_bytes);
  return tek;
}

RollingProximityIdentifier derive_rpi(const TemporaryExposureKey& tek,
                                      std::uint32_t interval_index,
                                      const ProtocolParams& params) {
  detail::ensure_sodium_ready();
  params.validate();
  const auto ipd = static_cast<std::uint32_t>(params.intervals_per_day());
  if (interval_index >= ipd) {
    throw DomainError("interval_index " + std::to_string(interval_index) +
                      " out of range [0, " + std::to_string(ipd) + ")");
  }

  const std::uint32_t absolute =
      tek.day_number * ipd + interval_index;  // absolute interval count

  Bytes input(tek.key_bytes.begin(), tek.key_bytes.end());
  append_u32le(input, absolute);

  std::uint8_t digest[crypto_hash_sha256_BYTES];
  crypto_hash_sha256(digest, input.data(), input.size());

  RollingProximityIdentifier rpi;
  rpi.day_number = tek.day_number;
  rpi.interval_index = interval_index;
  std::memcpy(rpi.rpi_bytes.data(), digest, kIdentifierSize);
  return rpi;
}

Bytes16 cross_hash(const Bytes16& older_rpi, const Bytes16& newer_rpi) {
  Bytes ikm;
  ikm.reserve(2 * kIdentifierSize);
  ikm.insert(ikm.end(), older_rpi.begin(), older_rpi.end());
  ikm.insert(ikm.end(), newer_rpi.begin(), newer_rpi.end());

  Bytes16 out;
  hkdf_sha256(out, ikm, {},
              {reinterpret_cast<const std::uint8_t*>(kCciInfoLabel),
               sizeof(kCciInfoLabel) - 1});
  return out;
}

ConsistentContactIdentifier derive_cci(const RollingProximityIdentifier& older,
                                       const RollingProximityIdentifier& newer,
                                       const ProtocolParams& params) {
  params.validate();
  const std::uint64_t older_abs = older.absolute_interval(params);
  const std::uint64_t newer_abs = newer.absolute_interval(params);
  if (newer_abs <= older_abs ||
      newer_abs - older_abs != static_cast<std::uint64_t>(params.k_steps)) {
    throw DomainError("interval gap between the identifiers must equal k_steps=" +
                      std::to_string(params.k_steps));
  }

  ConsistentContactIdentifier cci;
  cci.day_number = newer.day_number;
  cci.interval_index = newer.interval_index;
  cci.cci_bytes = cross_hash(older.rpi_bytes, newer.rpi_bytes);
  return cci;
}

std::vector<ConsistentContactIdentifier> derive_tek_ccis(
    const TemporaryExposureKey& tek, const ProtocolParams& params) {
  params.validate();
  const int ipd = params.intervals_per_day();
  const int k = params.k_steps;

  std::vector<RollingProximityIdentifier> rpis;
  rpis.reserve(static_cast<std::size_t>(ipd));
  for (int n = 0; n < ipd; ++n) {
    rpis.push_back(derive_rpi(tek, static_cast<std::uint32_t>(n), params));
  }

  std::vector<ConsistentContactIdentifier> ccis;
  ccis.reserve(static_cast<std::size_t>(ipd - k));
  for (int n = k; n < ipd; ++n) {
    ccis.push_back(derive_cci(rpis[static_cast<std::size_t>(n - k)],
                              rpis[static_cast<std::size_t>(n)], params));
  }
  return ccis;
}

BucketId prefix_of(const Bytes16& value, int prefix_bits) {
  if (prefix_bits < 4 || prefix_bits > 64) {
    throw DomainError("prefix_bits must be in [4, 64], got " +
                      std::to_string(prefix_bits));
  }
  std::uint64_t head = 0;
  for (int i = 0; i < 8; ++i) {
    head = (head << 8) | value[static_cast<std::size_t>(i)];
  }
  BucketId id;
  id.prefix_bits = prefix_bits;
  id.prefix_value = head >> (64 - prefix_bits);
  return id;
}

BucketId bucket_prefix(const ConsistentContactIdentifier& cci,
                       const ProtocolParams& params) {
  params.validate();
  return prefix_of(cci.cci_bytes, params.prefix_bits);
}

}  // namespace crosshash
