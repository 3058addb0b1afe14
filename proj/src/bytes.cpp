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

#include "crosshash/bytes.hpp"

#include <cstring>

#include "crosshash/errors.hpp"

namespace crosshash {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string to_hex(std::span<const std::uint8_t> data) {
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0x0f]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) {
    throw DomainError("hex string has odd length");
  }
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = hex_nibble(hex[i]);
    int lo = hex_nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) {
      throw DomainError("invalid hex character");
    }
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

Bytes16 bytes16_from_hex(std::string_view hex) {
  Bytes raw = from_hex(hex);
  if (raw.size() != 16) {
    throw DomainError("expected 16 bytes (32 hex characters), got " +
                      std::to_string(raw.size()) + " bytes");
  }
  Bytes16 out;
  std::memcpy(out.data(), raw.data(), 16);
  return out;
}

void append_u16be(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void append_u32be(Bytes& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

void append_u64be(Bytes& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

void append_u32le(Bytes& out, std::uint32_t v) {
  for (int shift = 0; shift <= 24; shift += 8) {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

std::uint8_t ByteReader::read_u8() {
  if (remaining() < 1) throw ProtocolError("truncated input: expected u8");
  return data_[offset_++];
}

std::uint16_t ByteReader::read_u16be() {
  if (remaining() < 2) throw ProtocolError("truncated input: expected u16");
  std::uint16_t v = static_cast<std::uint16_t>(
      (static_cast<std::uint16_t>(data_[offset_]) << 8) | data_[offset_ + 1]);
  offset_ += 2;
  return v;
}

std::uint32_t ByteReader::read_u32be() {
  if (remaining() < 4) throw ProtocolError("truncated input: expected u32");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = (v << 8) | data_[offset_ + static_cast<std::size_t>(i)];
  offset_ += 4;
  return v;
}

std::uint64_t ByteReader::read_u64be() {
  if (remaining() < 8) throw ProtocolError("truncated input: expected u64");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | data_[offset_ + static_cast<std::size_t>(i)];
  offset_ += 8;
  return v;
}

Bytes16 ByteReader::read_bytes16() {
  auto s = read_span(16);
  Bytes16 out;
  std::memcpy(out.data(), s.data(), 16);
  return out;
}

Bytes32 ByteReader::read_bytes32() {
  auto s = read_span(32);
  Bytes32 out;
  std::memcpy(out.data(), s.data(), 32);
  return out;
}

std::span<const std::uint8_t> ByteReader::read_span(std::size_t n) {
  if (remaining() < n) {
    throw ProtocolError("truncated input: expected " + std::to_string(n) +
                        " bytes, have " + std::to_string(remaining()));
  }
  auto s = data_.subspan(offset_, n);
  offset_ += n;
  return s;
}

void ByteReader::expect_done() const {
  if (!done()) {
    throw ProtocolError("trailing bytes after message: " +
                        std::to_string(remaining()));
  }
}

}  // namespace crosshash
