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

#include "crosshash/rng.hpp"

#include <sodium.h>

#include <cstring>
#include <stdexcept>

#include "crosshash/detail/sodium_guard.hpp"
#include "crosshash/errors.hpp"

namespace crosshash {

namespace detail {

void ensure_sodium_ready() {
  static const int rc = sodium_init();
  if (rc < 0) {
    throw std::runtime_error("libsodium initialization failed");
  }
}

}  // namespace detail

std::uint8_t RandomSource::next_byte() {
  std::uint8_t b;
  fill({&b, 1});
  return b;
}

std::uint64_t RandomSource::next_u64() {
  std::uint8_t buf[8];
  fill(buf);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | buf[i];
  return v;
}

std::uint64_t RandomSource::uniform_below(std::uint64_t bound) {
  if (bound == 0) {
    throw DomainError("uniform_below: bound must be nonzero");
  }
  if (bound == 1) return 0;
  // Rejection sampling over the largest multiple of bound below 2^64.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v <= limit) return v % bound;
  }
}

double RandomSource::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

void SystemRandom::fill(std::span<std::uint8_t> out) {
  detail::ensure_sodium_ready();
  randombytes_buf(out.data(), out.size());
}

namespace {

Bytes32 expand_seed(std::uint64_t seed) {
  detail::ensure_sodium_ready();
  Bytes expanded;
  const char tag[] = "crosshash.drng.v1";
  expanded.assign(tag, tag + sizeof(tag) - 1);
  append_u64be(expanded, seed);
  Bytes32 key;
  crypto_hash_sha256(key.data(), expanded.data(), expanded.size());
  return key;
}

}  // namespace

DeterministicRandom::DeterministicRandom(std::uint64_t seed)
    : key_(expand_seed(seed)) {}

DeterministicRandom::DeterministicRandom(const Bytes32& key) : key_(key) {
  detail::ensure_sodium_ready();
}

void DeterministicRandom::refill() {
  // Each 1 KiB block is ChaCha20 keystream with the block index as nonce.
  std::uint8_t nonce[crypto_stream_chacha20_NONCEBYTES] = {0};
  for (int i = 0; i < 8; ++i) {
    nonce[i] = static_cast<std::uint8_t>(block_counter_ >> (8 * i));
  }
  crypto_stream_chacha20(buffer_.data(), buffer_.size(), nonce, key_.data());
  ++block_counter_;
  buffer_pos_ = 0;
}

void DeterministicRandom::fill(std::span<std::uint8_t> out) {
  std::size_t written = 0;
  while (written < out.size()) {
    if (buffer_pos_ == buffer_.size()) refill();
    std::size_t n = std::min(out.size() - written, buffer_.size() - buffer_pos_);
    std::memcpy(out.data() + written, buffer_.data() + buffer_pos_, n);
    buffer_pos_ += n;
    written += n;
  }
}

DeterministicRandom DeterministicRandom::fork(std::uint64_t stream_id) const {
  Bytes material;
  const char tag[] = "crosshash.drng.fork";
  material.assign(key_.begin(), key_.end());
  material.insert(material.end(), tag, tag + sizeof(tag) - 1);
  append_u64be(material, stream_id);
  Bytes32 child_key;
  crypto_hash_sha256(child_key.data(), material.data(), material.size());
  return DeterministicRandom(child_key);
}

}  // namespace crosshash
