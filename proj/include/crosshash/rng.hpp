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

namespace crosshash {

/// Uniform byte source. Every operation that consumes randomness takes one of
/// these explicitly, so tests and simulations can swap in a seeded stream.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  virtual void fill(std::span<std::uint8_t> out) = 0;

  std::uint8_t next_byte();
  std::uint64_t next_u64();

  /// Uniform in [0, bound). bound must be nonzero. Unbiased (rejection).
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform01();

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[uniform_below(i)]);
    }
  }
};

/// Operating-system CSPRNG. Thread-safe; failure is unrecoverable and aborts.
class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

/// Seeded ChaCha20 stream: byte-identical output for a given seed on every
/// platform. Used by tests and by the deterministic simulator.
class DeterministicRandom final : public RandomSource {
 public:
  explicit DeterministicRandom(std::uint64_t seed);
  explicit DeterministicRandom(const Bytes32& key);

  void fill(std::span<std::uint8_t> out) override;

  /// Independent child stream. Distinct stream_ids (and further forks of the
  /// children) never overlap with this stream or each other.
  DeterministicRandom fork(std::uint64_t stream_id) const;

 private:
  void refill();

  Bytes32 key_;
  std::uint64_t block_counter_ = 0;
  std::array<std::uint8_t, 1024> buffer_{};
  std::size_t buffer_pos_ = sizeof(buffer_);
};

}  // namespace crosshash
