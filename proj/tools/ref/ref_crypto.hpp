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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

// Self-contained reference primitives for cross-checking the production
// crypto path. Deliberately written from the FIPS 180-4 / RFC 2104 /
// RFC 5869 definitions with no shared code or dependencies, so the two
// sides can only agree by both being right. Not constant-time, not for
// production use.
namespace refcrypto {

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data);

std::array<std::uint8_t, 32> hmac_sha256(std::span<const std::uint8_t> key,
                                         std::span<const std::uint8_t> data);

/// RFC 5869 extract-then-expand. Empty salt behaves as a zeroed hash-length
/// salt. length must be at most 255 * 32.
std::vector<std::uint8_t> hkdf_sha256(std::size_t length,
                                      std::span<const std::uint8_t> ikm,
                                      std::span<const std::uint8_t> salt,
                                      std::span<const std::uint8_t> info);

}  // namespace refcrypto
