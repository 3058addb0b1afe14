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

// Identifier derivation against frozen vectors, a from-scratch reference
// implementation, and the arithmetic the protocol's guarantees rest on.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "crosshash/bytes.hpp"
#include "crosshash/errors.hpp"
#include "crosshash/hkdf.hpp"
#include "crosshash/identifiers.hpp"
#include "crosshash/rng.hpp"
#include "ref/ref_crypto.hpp"
#include "support/test_util.hpp"

namespace crosshash {
namespace {

using test::make_params;

Bytes hex_bytes(const std::string& hex) { return from_hex(hex); }

TEST_CASE("hkdf_sha256 matches the RFC 5869 appendix vectors") {
  const auto doc = test::load_golden_vectors();
  REQUIRE(doc.contains("hkdf"));
  for (const auto& item : doc["hkdf"]) {
    CAPTURE(item["name"].get<std::string>());
    const Bytes ikm = hex_bytes(item["ikm"]);
    const Bytes salt = hex_bytes(item["salt"]);
    const Bytes info = hex_bytes(item["info"]);
    Bytes okm(item["length"].get<std::size_t>());
    hkdf_sha256(okm, ikm, salt, info);
    CHECK(to_hex(okm) == item["okm"].get<std::string>());
  }
}

TEST_CASE("derive_rpi matches the frozen vectors") {
  const auto doc = test::load_golden_vectors();
  REQUIRE(doc.contains("rpi"));
  for (const auto& item : doc["rpi"]) {
    ProtocolParams params =
        make_params(item["rotation_minutes"].get<int>());
    TemporaryExposureKey tek;
    tek.key_bytes = bytes16_from_hex(item["tek"].get<std::string>());
    tek.day_number = item["day"].get<std::uint32_t>();
    const auto rpi =
        derive_rpi(tek, item["interval"].get<std::uint32_t>(), params);
    CAPTURE(tek.day_number);
    CAPTURE(rpi.interval_index);
    CHECK(to_hex(rpi.rpi_bytes) == item["rpi"].get<std::string>());
    CHECK(rpi.day_number == tek.day_number);
  }
}

TEST_CASE("cross_hash matches the frozen vectors") {
  const auto doc = test::load_golden_vectors();
  REQUIRE(doc.contains("cci"));
  for (const auto& item : doc["cci"]) {
    const Bytes16 older = bytes16_from_hex(item["older"].get<std::string>());
    const Bytes16 newer = bytes16_from_hex(item["newer"].get<std::string>());
    CHECK(to_hex(cross_hash(older, newer)) == item["cci"].get<std::string>());
  }
}

TEST_CASE("derivation agrees with an independent reference implementation") {
  // The reference implements SHA-256, HMAC, and HKDF straight from FIPS
  // 180-4, RFC 2104, and RFC 5869, sharing no code with the library.
  DeterministicRandom rng(0x5eed0001);
  for (int trial = 0; trial < 200; ++trial) {
    ProtocolParams params = make_params(trial % 2 == 0 ? 10 : 5);
    TemporaryExposureKey tek = generate_tek(
        rng, static_cast<std::uint32_t>(rng.uniform_below(100000)));
    const auto ipd = static_cast<std::uint32_t>(params.intervals_per_day());
    const auto interval = static_cast<std::uint32_t>(rng.uniform_below(ipd));

    const auto rpi = derive_rpi(tek, interval, params);

    // RPI = first 16 bytes of SHA-256(TEK || LE32(day * ipd + interval)).
    std::vector<std::uint8_t> preimage(tek.key_bytes.begin(),
                                       tek.key_bytes.end());
    const std::uint32_t count =
        static_cast<std::uint32_t>(tek.day_number * ipd + interval);
    for (int i = 0; i < 4; ++i) {
      preimage.push_back(static_cast<std::uint8_t>((count >> (8 * i)) & 0xff));
    }
    const auto digest = refcrypto::sha256(preimage);
    CHECK(std::equal(rpi.rpi_bytes.begin(), rpi.rpi_bytes.end(),
                     digest.begin()));

    // CCI = HKDF(ikm = older || newer, salt = "", info = "CCIv1", 16 bytes).
    Bytes16 other;
    rng.fill(other);
    std::vector<std::uint8_t> ikm(rpi.rpi_bytes.begin(), rpi.rpi_bytes.end());
    ikm.insert(ikm.end(), other.begin(), other.end());
    const std::string info = "CCIv1";
    const std::vector<std::uint8_t> empty_salt;
    const auto okm = refcrypto::hkdf_sha256(
        16, ikm, empty_salt,
        std::vector<std::uint8_t>(info.begin(), info.end()));
    const Bytes16 cci = cross_hash(rpi.rpi_bytes, other);
    CHECK(std::equal(cci.begin(), cci.end(), okm.begin()));
  }
}

TEST_CASE("cross_hash is order-sensitive") {
  Bytes16 a{};
  Bytes16 b{};
  a.fill(0x01);
  b.fill(0x02);
  CHECK(cross_hash(a, b) != cross_hash(b, a));
}

TEST_CASE("derive_cci accepts exactly k-apart identifiers") {
  ProtocolParams params = make_params(10, 2);
  DeterministicRandom rng(7);
  const auto tek = generate_tek(rng, 40);

  const auto older = derive_rpi(tek, 10, params);
  const auto newer = derive_rpi(tek, 12, params);
  const auto cci = derive_cci(older, newer, params);
  CHECK(cci.cci_bytes == cross_hash(older.rpi_bytes, newer.rpi_bytes));
  CHECK(cci.day_number == 40);
  CHECK(cci.interval_index == 12);

  CHECK_THROWS_AS(derive_cci(older, derive_rpi(tek, 13, params), params),
                  DomainError);
  CHECK_THROWS_AS(derive_cci(older, older, params), DomainError);
  CHECK_THROWS_AS(derive_cci(newer, older, params), DomainError);
}

TEST_CASE("derive_cci spans midnight on the absolute interval count") {
  // Observers pair whatever they heard k rotations apart; only the per-TEK
  // server derivation is day-bounded.
  ProtocolParams params = make_params(10, 1);
  DeterministicRandom rng(8);
  const auto tek_a = generate_tek(rng, 40);
  const auto tek_b = generate_tek(rng, 41);
  const auto older = derive_rpi(tek_a, 143, params);
  const auto newer = derive_rpi(tek_b, 0, params);
  const auto cci = derive_cci(older, newer, params);
  CHECK(cci.cci_bytes == cross_hash(older.rpi_bytes, newer.rpi_bytes));
}

TEST_CASE("derive_tek_ccis yields intervals_per_day - k_steps identifiers") {
  DeterministicRandom rng(11);
  const auto tek = generate_tek(rng, 123);

  CHECK(derive_tek_ccis(tek, make_params(10, 1)).size() == 143);
  CHECK(derive_tek_ccis(tek, make_params(5, 3)).size() == 285);

  for (const int k : {1, 2, 5}) {
    ProtocolParams params = make_params(10, k);
    const auto ccis = derive_tek_ccis(tek, params);
    REQUIRE(ccis.size() ==
            static_cast<std::size_t>(params.intervals_per_day() - k));

    // Brute-force re-derivation from the RPI schedule.
    std::vector<Bytes16> schedule;
    for (int n = 0; n < params.intervals_per_day(); ++n) {
      schedule.push_back(
          derive_rpi(tek, static_cast<std::uint32_t>(n), params).rpi_bytes);
    }
    for (std::size_t i = 0; i < ccis.size(); ++i) {
      const auto n = ccis[i].interval_index;
      CHECK(n == i + static_cast<std::size_t>(k));
      CHECK(ccis[i].day_number == tek.day_number);
      CHECK(ccis[i].cci_bytes ==
            cross_hash(schedule[n - static_cast<std::size_t>(k)],
                       schedule[n]));
    }

    std::set<Bytes16> distinct;
    for (const auto& cci : ccis) distinct.insert(cci.cci_bytes);
    CHECK(distinct.size() == ccis.size());
  }
}

TEST_CASE("observing d rotations yields max(0, d - k) pairable identifiers") {
  DeterministicRandom rng(12);
  for (int k = 1; k <= 5; ++k) {
    ProtocolParams params = make_params(10, k);
    const auto tek = generate_tek(rng, 9);
    const auto server_side = derive_tek_ccis(tek, params);
    std::set<Bytes16> disclosed;
    for (const auto& cci : server_side) disclosed.insert(cci.cci_bytes);

    for (int d = 1; d <= 20; ++d) {
      const std::uint32_t start = 30;
      int pairable = 0;
      for (int n = k; n < d; ++n) {
        const auto older =
            derive_rpi(tek, start + static_cast<std::uint32_t>(n - k), params);
        const auto newer =
            derive_rpi(tek, start + static_cast<std::uint32_t>(n), params);
        const auto cci = derive_cci(older, newer, params);
        CHECK(disclosed.contains(cci.cci_bytes));
        ++pairable;
      }
      CHECK(pairable == std::max(0, d - k));
    }
  }
}

TEST_CASE("prefix_of extracts leading bits big-endian") {
  const Bytes16 value = bytes16_from_hex("de47c9b27eb8d300dbb5f2c353e632c3");
  CHECK(prefix_of(value, 4).prefix_value == 0xd);
  CHECK(prefix_of(value, 8).prefix_value == 0xde);
  CHECK(prefix_of(value, 12).prefix_value == 0xde4);
  CHECK(prefix_of(value, 16).prefix_value == 0xde47);
  CHECK(prefix_of(value, 20).prefix_value == 0xde47c);
  CHECK(prefix_of(value, 64).prefix_value == 0xde47c9b27eb8d300ULL);
  CHECK(prefix_of(value, 16).prefix_bits == 16);

  CHECK_THROWS_AS(prefix_of(value, 3), DomainError);
  CHECK_THROWS_AS(prefix_of(value, 65), DomainError);
  CHECK_THROWS_AS(prefix_of(value, 0), DomainError);
}

TEST_CASE("shorter prefixes are prefixes of longer ones") {
  DeterministicRandom rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    Bytes16 value;
    rng.fill(value);
    for (int shorter = 4; shorter <= 60; shorter += 7) {
      const int longer = shorter + 4;
      const auto a = prefix_of(value, shorter);
      const auto b = prefix_of(value, longer);
      CHECK(a.prefix_value == (b.prefix_value >> (longer - shorter)));
    }
  }
}

TEST_CASE("bucket_prefix uses the configured width") {
  ProtocolParams params = make_params(10, 1, 12);
  DeterministicRandom rng(14);
  const auto tek = generate_tek(rng, 2);
  const auto ccis = derive_tek_ccis(tek, params);
  for (const auto& cci : ccis) {
    const auto bucket = bucket_prefix(cci, params);
    CHECK(bucket.prefix_bits == 12);
    CHECK(bucket == prefix_of(cci.cci_bytes, 12));
  }
}

TEST_CASE("ProtocolParams::validate rejects unusable combinations") {
  CHECK_NOTHROW(make_params().validate());
  CHECK_NOTHROW(make_params(5, 3, 4, 1).validate());
  CHECK_NOTHROW(make_params(1440 / 2, 1, 64).validate());

  CHECK_THROWS_AS(make_params(7).validate(), DomainError);    // 1440 % 7 != 0
  CHECK_THROWS_AS(make_params(0).validate(), DomainError);
  CHECK_THROWS_AS(make_params(10, 0).validate(), DomainError);
  CHECK_THROWS_AS(make_params(10, 144).validate(), DomainError);
  CHECK_THROWS_AS(make_params(10, 1, 3).validate(), DomainError);
  CHECK_THROWS_AS(make_params(10, 1, 65).validate(), DomainError);
  CHECK_THROWS_AS(make_params(10, 1, 16, 0).validate(), DomainError);
}

TEST_CASE("derive_rpi rejects out-of-day interval indices") {
  DeterministicRandom rng(15);
  const auto tek = generate_tek(rng, 1);
  CHECK_NOTHROW(derive_rpi(tek, 143, make_params(10)));
  CHECK_THROWS_AS(derive_rpi(tek, 144, make_params(10)), DomainError);
  CHECK_NOTHROW(derive_rpi(tek, 287, make_params(5)));
  CHECK_THROWS_AS(derive_rpi(tek, 288, make_params(5)), DomainError);
}

TEST_CASE("generate_tek draws fresh key material") {
  SystemRandom rng;
  std::set<Bytes16> keys;
  for (int i = 0; i < 32; ++i) {
    keys.insert(generate_tek(rng, 7).key_bytes);
  }
  CHECK(keys.size() == 32);

  DeterministicRandom a(99);
  DeterministicRandom b(99);
  CHECK(generate_tek(a, 7).key_bytes == generate_tek(b, 7).key_bytes);
}

TEST_CASE("min_contact_minutes reflects rotation and step distance") {
  CHECK(make_params(10, 1).min_contact_minutes() == 10);
  CHECK(make_params(10, 3).min_contact_minutes() == 30);
  CHECK(make_params(5, 2).min_contact_minutes() == 10);
}

TEST_CASE("hkdf_sha256 rejects oversized output requests") {
  Bytes okm(255 * 32 + 1);
  const Bytes ikm{0x01};
  CHECK_THROWS_AS(hkdf_sha256(okm, ikm, {}, {}), DomainError);
}

TEST_CASE("hex codec round-trips and rejects malformed input") {
  CHECK(to_hex(Bytes{0x00, 0xff, 0x10}) == "00ff10");
  CHECK(from_hex("00ff10") == Bytes{0x00, 0xff, 0x10});
  CHECK(from_hex("") == Bytes{});
  CHECK_THROWS_AS(from_hex("abc"), DomainError);    // odd length
  CHECK_THROWS_AS(from_hex("zz"), DomainError);     // non-hex
  CHECK_THROWS_AS(bytes16_from_hex("00ff"), DomainError);
}

}  // namespace
}  // namespace crosshash
