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

#include "crosshash/hkdf.hpp"

#include <sodium.h>

#include <cstring>

#include "crosshash/detail/sodium_guard.hpp"
#include "crosshash/errors.hpp"

namespace crosshash {

namespace {

constexpr std::size_t kHashLen = crypto_auth_hmacsha256_BYTES;  // 32

void hmac_sha256(std::uint8_t out[kHashLen],
                 std::span<const std::uint8_t> key,
                 std::span<const std::uint8_t> data1,
                 std::span<const std::uint8_t> data2 = {},
                 std::span<const std::uint8_t> data3 = {}) {
  crypto_auth_hmacsha256_state st;
  crypto_auth_hmacsha256_init(&st, key.data(), key.size());
  if (!data1.empty()) crypto_auth_hmacsha256_update(&st, data1.data(), data1.size());
  if (!data2.empty()) crypto_auth_hmacsha256_update(&st, data2.data(), data2.size());
  if (!data3.empty()) crypto_auth_hmacsha256_update(&st, data3.data(), data3.size());
  crypto_auth_hmacsha256_final(&st, out);
}

}  // namespace

void hkdf_sha256(std::span<std::uint8_t> okm,
                 std::span<const std::uint8_t> ikm,
                 std::span<const std::uint8_t> salt,
                 std::span<const std::uint8_t> info) {
  detail::ensure_sodium_ready();
  if (okm.size() > 255 * kHashLen) {
    throw DomainError("hkdf_sha256: requested output exceeds 255 blocks");
  }
  if (okm.empty()) return;

  // Extract.
  std::uint8_t prk[kHashLen];
  if (salt.empty()) {
    const std::uint8_t zero_salt[kHashLen] = {0};
    hmac_sha256(prk, {zero_salt, kHashLen}, ikm);
  } else {
    hmac_sha256(prk, salt, ikm);
  }

  // Expand: T(i) = HMAC(PRK, T(i-1) || info || i), i starting at 1.
  std::uint8_t t[kHashLen];
  std::size_t t_len = 0;
  std::size_t offset = 0;
  std::uint8_t counter = 1;
  while (offset < okm.size()) {
    hmac_sha256(t, {prk, kHashLen}, {t, t_len}, info, {&counter, 1});
    t_len = kHashLen;
    std::size_t n = std::min(okm.size() - offset, kHashLen);
    std::memcpy(okm.data() + offset, t, n);
    offset += n;
    ++counter;
  }

  sodium_memzero(prk, sizeof(prk));
  sodium_memzero(t, sizeof(t));
}

}  // namespace crosshash
