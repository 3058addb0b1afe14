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

#include "ref/ref_crypto.hpp"

#include <cstring>
#include <stdexcept>

namespace refcrypto {

namespace {

// FIPS 180-4 section 4.2.2 round constants.
constexpr std::uint32_t kRoundConstants[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
    0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
    0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
    0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
    0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
    0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
    0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
    0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2,
};

constexpr std::uint32_t rotr(std::uint32_t x, int n) {
  return (x >> n) | (x << (32 - n));
}

struct Sha256State {
  std::uint32_t h[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                        0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
  std::uint64_t total_bytes = 0;
  std::uint8_t block[64];
  std::size_t block_fill = 0;

  void compress(const std::uint8_t* p) {
    std::uint32_t w[64];
    for (int t = 0; t < 16; ++t) {
      w[t] = (std::uint32_t{p[4 * t]} << 24) |
             (std::uint32_t{p[4 * t + 1]} << 16) |
             (std::uint32_t{p[4 * t + 2]} << 8) | std::uint32_t{p[4 * t + 3]};
    }
    for (int t = 16; t < 64; ++t) {
      const std::uint32_t s0 =
          rotr(w[t - 15], 7) ^ rotr(w[t - 15], 18) ^ (w[t - 15] >> 3);
      const std::uint32_t s1 =
          rotr(w[t - 2], 17) ^ rotr(w[t - 2], 19) ^ (w[t - 2] >> 10);
      w[t] = w[t - 16] + s0 + w[t - 7] + s1;
    }
    std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3];
    std::uint32_t e = h[4], f = h[5], g = h[6], hh = h[7];
    for (int t = 0; t < 64; ++t) {
      const std::uint32_t sigma1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      const std::uint32_t choice = (e & f) ^ (~e & g);
      const std::uint32_t t1 = hh + sigma1 + choice + kRoundConstants[t] + w[t];
      const std::uint32_t sigma0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      const std::uint32_t majority = (a & b) ^ (a & c) ^ (b & c);
      const std::uint32_t t2 = sigma0 + majority;
      hh = g;
      g = f;
      f = e;
      e = d + t1;
      d = c;
      c = b;
      b = a;
      a = t1 + t2;
    }
    h[0] += a;
    h[1] += b;
    h[2] += c;
    h[3] += d;
    h[4] += e;
    h[5] += f;
    h[6] += g;
    h[7] += hh;
  }

  void update(std::span<const std::uint8_t> data) {
    total_bytes += data.size();
    std::size_t offset = 0;
    if (block_fill > 0) {
      const std::size_t take = std::min(data.size(), 64 - block_fill);
      std::memcpy(block + block_fill, data.data(), take);
      block_fill += take;
      offset = take;
      if (block_fill == 64) {
        compress(block);
        block_fill = 0;
      }
    }
    while (offset + 64 <= data.size()) {
      compress(data.data() + offset);
      offset += 64;
    }
    if (offset < data.size()) {
      block_fill = data.size() - offset;
      std::memcpy(block, data.data() + offset, block_fill);
    }
  }

  std::array<std::uint8_t, 32> finish() {
    const std::uint64_t bit_length = total_bytes * 8;
    const std::uint8_t pad_byte = 0x80;
    update({&pad_byte, 1});
    const std::uint8_t zero = 0x00;
    while (block_fill != 56) {
      update({&zero, 1});
    }
    std::uint8_t length_bytes[8];
    for (int i = 0; i < 8; ++i) {
      length_bytes[i] = static_cast<std::uint8_t>(bit_length >> (56 - 8 * i));
    }
    update({length_bytes, 8});
    std::array<std::uint8_t, 32> digest;
    for (int i = 0; i < 8; ++i) {
      digest[static_cast<std::size_t>(4 * i)] =
          static_cast<std::uint8_t>(h[i] >> 24);
      digest[static_cast<std::size_t>(4 * i + 1)] =
          static_cast<std::uint8_t>(h[i] >> 16);
      digest[static_cast<std::size_t>(4 * i + 2)] =
          static_cast<std::uint8_t>(h[i] >> 8);
      digest[static_cast<std::size_t>(4 * i + 3)] =
          static_cast<std::uint8_t>(h[i]);
    }
    return digest;
  }
};

}  // namespace

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data) {
  Sha256State state;
  state.update(data);
  return state.finish();
}

std::array<std::uint8_t, 32> hmac_sha256(std::span<const std::uint8_t> key,
                                         std::span<const std::uint8_t> data) {
  std::uint8_t padded_key[64] = {};
  if (key.size() > 64) {
    const auto digest = sha256(key);
    std::memcpy(padded_key, digest.data(), digest.size());
  } else if (!key.empty()) {
    std::memcpy(padded_key, key.data(), key.size());
  }

  std::uint8_t ipad[64];
  std::uint8_t opad[64];
  for (int i = 0; i < 64; ++i) {
    ipad[i] = static_cast<std::uint8_t>(padded_key[i] ^ 0x36);
    opad[i] = static_cast<std::uint8_t>(padded_key[i] ^ 0x5c);
  }

  Sha256State inner;
  inner.update({ipad, 64});
  inner.update(data);
  const auto inner_digest = inner.finish();

  Sha256State outer;
  outer.update({opad, 64});
  outer.update(inner_digest);
  return outer.finish();
}

std::vector<std::uint8_t> hkdf_sha256(std::size_t length,
                                      std::span<const std::uint8_t> ikm,
                                      std::span<const std::uint8_t> salt,
                                      std::span<const std::uint8_t> info) {
  if (length > 255 * 32) {
    throw std::invalid_argument("hkdf_sha256: output too long");
  }
  const std::uint8_t zero_salt[32] = {};
  const auto prk =
      hmac_sha256(salt.empty() ? std::span<const std::uint8_t>{zero_salt, 32}
                               : salt,
                  ikm);

  std::vector<std::uint8_t> okm;
  okm.reserve(length);
  std::array<std::uint8_t, 32> block{};
  std::uint8_t counter = 1;
  std::size_t produced = 0;
  while (produced < length) {
    std::vector<std::uint8_t> input;
    if (produced > 0) {
      input.insert(input.end(), block.begin(), block.end());
    }
    input.insert(input.end(), info.begin(), info.end());
    input.push_back(counter);
    block = hmac_sha256(prk, input);
    const std::size_t take = std::min<std::size_t>(32, length - produced);
    okm.insert(okm.end(), block.begin(),
               block.begin() + static_cast<std::ptrdiff_t>(take));
    produced += take;
    ++counter;
  }
  return okm;
}

}  // namespace refcrypto
