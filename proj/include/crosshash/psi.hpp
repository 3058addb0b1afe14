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
#include <set>
#include <span>
#include <vector>

#include "crosshash/bytes.hpp"
#include "crosshash/rng.hpp"

namespace crosshash::psi {

/*
 Blinded membership exchange inside one bucket, semi-honest model.

   client   per real query c: fresh scalar a, point A = a * H(c).
            The query is padded to pad_to points with uniformly random
            elements, real points at random positions.
   server   per request: fresh scalar b. Returns b * A_i in query order, and
            { b * H(s) : s in bucket } shuffled and padded to response_pad
            with random elements.
   client   a^-1 * (b * A_i) = b * H(c); c matched iff that point occurs in
            the returned set.

 H is a hash to the group, so neither side ever sees the other's raw values,
 and both message sizes are functions of the pads alone.

 The group is ristretto255 (prime order, canonical 32-byte encodings).
 Everything below treats it as an opaque prime-order group; swapping the
 group means reimplementing this header's small set of primitives.
*/

inline constexpr std::size_t kGroupElementSize = 32;
inline constexpr std::size_t kScalarSize = 32;

struct GroupElement {
  std::array<std::uint8_t, kGroupElementSize> data{};

  auto operator<=>(const GroupElement&) const = default;
};

struct Scalar {
  std::array<std::uint8_t, kScalarSize> data{};
};

/// Deterministic map of an identifier into the group.
GroupElement hash_to_group(const Bytes16& value);

/// Uniform nonzero scalar.
Scalar random_scalar(RandomSource& rng);

/// Uniform group element (used for padding).
GroupElement random_element(RandomSource& rng);

Scalar invert(const Scalar& s);

/// Throws ProtocolError when the operand encoding is invalid or the result
/// would be the identity.
GroupElement scalar_mult(const Scalar& s, const GroupElement& p);

/// True for a canonical encoding of a non-identity element. Wire decoding
/// rejects anything else.
bool is_valid_element(const GroupElement& p);

/// Client-side secret for one real query: the blinding scalar, the value it
/// blinds, and where the blinded point sits inside the padded query.
struct ClientBlindState {
  Scalar blinding;
  Bytes16 cci{};
  std::size_t position = 0;
};

struct PsiQuery {
  std::vector<GroupElement> blinded_points;
};

struct PsiResponse {
  std::vector<GroupElement> double_blinded_points;  // query order
  std::vector<GroupElement> server_set_points;      // shuffled, padded
};

/// Blinds up to pad_to identifiers into a constant-shape query. An empty
/// `ccis` produces an all-padding query (used to pad request counts).
/// Throws CapacityError when ccis.size() > pad_to.
std::pair<std::vector<ClientBlindState>, PsiQuery> client_blind(
    std::span<const Bytes16> ccis, std::size_t pad_to, RandomSource& rng);

/// Server side of one exchange. Throws CapacityError when the bucket exceeds
/// response_pad, ProtocolError on an invalid query point.
PsiResponse server_respond(std::span<const Bytes16> bucket,
                           const PsiQuery& query, std::size_t response_pad,
                           RandomSource& rng);

/// Unblinds and intersects. Returns the matched identifiers. Throws
/// ProtocolError when the response shape does not fit the states' query.
std::set<Bytes16> client_match(std::span<const ClientBlindState> states,
                               const PsiResponse& response);

}  // namespace crosshash::psi
