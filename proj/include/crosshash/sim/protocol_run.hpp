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

#include <memory>
#include <vector>

#include "crosshash/bucket_store.hpp"
#include "crosshash/exposure_check.hpp"
#include "crosshash/sim/scenario.hpp"

namespace crosshash::sim {

/// What the diagnosis server publishes after an upload wave.
enum class Scheme {
  kTekDisclosure,  // raw daily keys, the baseline
  kCciDisclosure,  // cross-hashed identifiers in prefix buckets
};

/// How simulated devices run their exposure check under kCciDisclosure.
/// Direct intersects candidate CCIs with the store in-process; PSI runs the
/// full padded blinded exchange. The two agree by construction; Direct keeps
/// large scenario sweeps cheap.
enum class CheckMode {
  kDirect,
  kPsi,
};

struct PublishedData {
  Scheme scheme = Scheme::kTekDisclosure;

  /// kTekDisclosure: the diagnosed devices' keys, shuffled.
  std::vector<TemporaryExposureKey> teks;

  /// kCciDisclosure: the disclosed identifiers, sorted, plus the bucketized
  /// store the padded queries run against.
  std::vector<Bytes16> ccis;
  std::unique_ptr<BucketStore> store;
};

struct ProtocolRunResult {
  std::vector<ExposureResult> per_device;  // index is the device id
  PublishedData published;
};

/*
 Replays one day: every encounter produces mutual receptions on the interval
 grid (each reception independently lost with drop_probability), diagnosed
 devices disclose per the scheme, then every device checks its log.

 The baseline check mirrors the duration threshold the cross-hash enforces
 cryptographically: with a disclosed key, a sighting qualifies when the same
 key was heard at both ends of a k_steps window, and the match is attributed
 to the later interval. That keeps the two schemes' results comparable
 sighting for sighting.

 Deterministic for a fixed (scenario, params, scheme, mode); all randomness
 descends from scenario.seed.
*/
ProtocolRunResult run_protocol(const Scenario& scenario,
                               const ProtocolParams& params, Scheme scheme,
                               CheckMode mode = CheckMode::kDirect);

}  // namespace crosshash::sim
