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
#include <utility>
#include <vector>

#include "crosshash/bytes.hpp"
#include "crosshash/identifiers.hpp"
#include "crosshash/psi.hpp"

namespace crosshash::wire {

// Binary bodies carried over HTTP. Fixed layouts, no self-description:
//
//   diagnosis upload   u8 version | u8 entry_count |
//                      entry_count * (u32-BE day_number | 16-byte TEK)
//   upload reply       u32-BE newly inserted count
//   bucket query       u8 version | u8 prefix_bits | u64-BE prefix_value |
//                      u16-BE count | count * 32-byte group elements
//   query reply        u8 version | u16-BE count | count * 32-byte elements
//                      (double-blinded, query order) | u16-BE count |
//                      count * 32-byte elements (server set)
//
// Decoders reject unknown versions, truncated or oversized bodies, and any
// group element that is not a canonical non-identity encoding.

inline constexpr std::uint8_t kWireVersion = 1;

struct DiagnosisUpload {
  struct Entry {
    std::uint32_t day_number = 0;
    Bytes16 tek{};
  };
  std::vector<Entry> entries;
};

Bytes encode_diagnosis(const DiagnosisUpload& upload);
DiagnosisUpload decode_diagnosis(std::span<const std::uint8_t> body);

Bytes encode_upload_reply(std::uint32_t inserted);
std::uint32_t decode_upload_reply(std::span<const std::uint8_t> body);

Bytes encode_query(const BucketId& bucket, const psi::PsiQuery& query);
std::pair<BucketId, psi::PsiQuery> decode_query(
    std::span<const std::uint8_t> body);

Bytes encode_response(const psi::PsiResponse& response);
psi::PsiResponse decode_response(std::span<const std::uint8_t> body);

}  // namespace crosshash::wire
