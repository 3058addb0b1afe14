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

#include "crosshash/wire.hpp"

#include <limits>

#include "crosshash/errors.hpp"

namespace crosshash::wire {

namespace {

void check_version(std::uint8_t v) {
  if (v != kWireVersion) {
    throw ProtocolError("unsupported wire version " + std::to_string(v));
  }
}

void append_elements(Bytes& out, const std::vector<psi::GroupElement>& points) {
  if (points.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw ProtocolError("too many group elements for a u16 count");
  }
  append_u16be(out, static_cast<std::uint16_t>(points.size()));
  for (const auto& p : points) {
    out.insert(out.end(), p.data.begin(), p.data.end());
  }
}

std::vector<psi::GroupElement> read_elements(ByteReader& reader) {
  const std::uint16_t count = reader.read_u16be();
  std::vector<psi::GroupElement> points;
  points.reserve(count);
  for (std::uint16_t i = 0; i < count; ++i) {
    psi::GroupElement p;
    p.data = reader.read_bytes32();
    if (!psi::is_valid_element(p)) {
      throw ProtocolError("invalid group element in message");
    }
    points.push_back(p);
  }
  return points;
}

}  // namespace

Bytes encode_diagnosis(const DiagnosisUpload& upload) {
  if (upload.entries.size() > std::numeric_limits<std::uint8_t>::max()) {
    throw ProtocolError("too many diagnosis entries for a u8 count");
  }
  Bytes out;
  out.push_back(kWireVersion);
  out.push_back(static_cast<std::uint8_t>(upload.entries.size()));
  for (const auto& entry : upload.entries) {
    append_u32be(out, entry.day_number);
    out.insert(out.end(), entry.tek.begin(), entry.tek.end());
  }
  return out;
}

DiagnosisUpload decode_diagnosis(std::span<const std::uint8_t> body) {
  ByteReader reader(body);
  check_version(reader.read_u8());
  const std::uint8_t count = reader.read_u8();
  DiagnosisUpload upload;
  upload.entries.reserve(count);
  for (std::uint8_t i = 0; i < count; ++i) {
    DiagnosisUpload::Entry entry;
    entry.day_number = reader.read_u32be();
    entry.tek = reader.read_bytes16();
    upload.entries.push_back(entry);
  }
  reader.expect_done();
  return upload;
}

Bytes encode_upload_reply(std::uint32_t inserted) {
  Bytes out;
  append_u32be(out, inserted);
  return out;
}

std::uint32_t decode_upload_reply(std::span<const std::uint8_t> body) {
  ByteReader reader(body);
  const std::uint32_t inserted = reader.read_u32be();
  reader.expect_done();
  return inserted;
}

Bytes encode_query(const BucketId& bucket, const psi::PsiQuery& query) {
  if (bucket.prefix_bits < 4 || bucket.prefix_bits > 64) {
    throw ProtocolError("bucket prefix_bits out of range");
  }
  Bytes out;
  out.push_back(kWireVersion);
  out.push_back(static_cast<std::uint8_t>(bucket.prefix_bits));
  append_u64be(out, bucket.prefix_value);
  append_elements(out, query.blinded_points);
  return out;
}

std::pair<BucketId, psi::PsiQuery> decode_query(
    std::span<const std::uint8_t> body) {
  ByteReader reader(body);
  check_version(reader.read_u8());
  BucketId bucket;
  bucket.prefix_bits = reader.read_u8();
  bucket.prefix_value = reader.read_u64be();
  if (bucket.prefix_bits < 4 || bucket.prefix_bits > 64) {
    throw ProtocolError("bucket prefix_bits out of range");
  }
  if (bucket.prefix_bits < 64 &&
      bucket.prefix_value >> bucket.prefix_bits != 0) {
    throw ProtocolError("bucket prefix_value wider than prefix_bits");
  }
  psi::PsiQuery query;
  query.blinded_points = read_elements(reader);
  reader.expect_done();
  return {bucket, std::move(query)};
}

Bytes encode_response(const psi::PsiResponse& response) {
  Bytes out;
  out.push_back(kWireVersion);
  append_elements(out, response.double_blinded_points);
  append_elements(out, response.server_set_points);
  return out;
}

psi::PsiResponse decode_response(std::span<const std::uint8_t> body) {
  ByteReader reader(body);
  check_version(reader.read_u8());
  psi::PsiResponse response;
  response.double_blinded_points = read_elements(reader);
  response.server_set_points = read_elements(reader);
  reader.expect_done();
  return response;
}

}  // namespace crosshash::wire
