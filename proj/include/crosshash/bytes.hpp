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
#include <string>
#include <string_view>
#include <vector>

namespace crosshash {

using Bytes = std::vector<std::uint8_t>;
using Bytes16 = std::array<std::uint8_t, 16>;
using Bytes32 = std::array<std::uint8_t, 32>;

/// Lowercase hex, no prefix. The universal textual encoding for identifiers.
std::string to_hex(std::span<const std::uint8_t> data);

/// Throws DomainError on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

/// Throws DomainError unless `hex` decodes to exactly 16 bytes.
Bytes16 bytes16_from_hex(std::string_view hex);

struct Bytes16Hash {
  std::size_t operator()(const Bytes16& b) const noexcept {
    // Identifiers are outputs of SHA-256/HKDF, so the leading bytes are
    // already uniform.
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | b[static_cast<std::size_t>(i)];
    return static_cast<std::size_t>(v * 0x9e3779b97f4a7c15ULL);
  }
};

// Big/little-endian integer framing used by every on-disk and on-wire format.

void append_u16be(Bytes& out, std::uint16_t v);
void append_u32be(Bytes& out, std::uint32_t v);
void append_u64be(Bytes& out, std::uint64_t v);
void append_u32le(Bytes& out, std::uint32_t v);

/// Bounds-checked sequential reader over a byte span. All read_* methods
/// throw ProtocolError when the input is shorter than requested.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t read_u8();
  std::uint16_t read_u16be();
  std::uint32_t read_u32be();
  std::uint64_t read_u64be();
  Bytes16 read_bytes16();
  Bytes32 read_bytes32();
  std::span<const std::uint8_t> read_span(std::size_t n);

  std::size_t remaining() const { return data_.size() - offset_; }
  bool done() const { return offset_ == data_.size(); }

  /// Throws ProtocolError unless all input has been consumed.
  void expect_done() const;

 private:
  std::span<const std::uint8_t> data_;
  std::size_t offset_ = 0;
};

}  // namespace crosshash
