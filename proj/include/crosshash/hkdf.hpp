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

namespace crosshash {

/// HKDF with HMAC-SHA-256 per RFC 5869. An empty salt behaves as the RFC's
/// default (a block of HashLen zero bytes). okm.size() must be at most
/// 255 * 32 bytes.
void hkdf_sha256(std::span<std::uint8_t> okm,
                 std::span<const std::uint8_t> ikm,
                 std::span<const std::uint8_t> salt,
                 std::span<const std::uint8_t> info);

}  // namespace crosshash
