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

#include "crosshash/psi.hpp"

#include <sodium.h>

#include <algorithm>
#include <cstring>
#include <numeric>
#include <set>

#include "crosshash/detail/sodium_guard.hpp"
#include "crosshash/errors.hpp"

namespace crosshash::psi {

namespace {

constexpr char kHashToGroupLabel[] = "crosshash.h2g.v1";

bool is_zero(std::span<const std::uint8_t> bytes) {
  std::uint8_t acc = 0;
  for (auto b : bytes) acc |= b;
  return acc == 0;
}

}  // namespace

GroupElement hash_to_group(const Bytes16& value) {
  detail::ensure_sodium_ready();
  // 64 uniform bytes, then the group's standard from-uniform map.
  std::uint8_t wide[crypto_core_ristretto255_HASHBYTES];
  crypto_hash_sha512_state st;
  crypto_hash_sha512_init(&st);
  crypto_hash_sha512_update(
      &st, reinterpret_cast<const std::uint8_t*>(kHashToGroupLabel),
      sizeof(kHashToGroupLabel) - 1);
  crypto_hash_sha512_update(&st, value.data(), value.size());
  crypto_hash_sha512_final(&st, wide);

  GroupElement out;
  crypto_core_ristretto255_from_hash(out.data.data(), wide);
  return out;
}

Scalar random_scalar(RandomSource& rng) {
  detail::ensure_sodium_ready();
  Scalar s;
  std::uint8_t wide[crypto_core_ristretto255_NONREDUCEDSCALARBYTES];
  do {
    rng.fill(wide);
    crypto_core_ristretto255_scalar_reduce(s.data.data(), wide);
  } while (is_zero(s.data));
  return s;
}

GroupElement random_element(RandomSource& rng) {
  detail::ensure_sodium_ready();
  std::uint8_t wide[crypto_core_ristretto255_HASHBYTES];
  rng.fill(wide);
  GroupElement out;
  crypto_core_ristretto255_from_hash(out.data.data(), wide);
  return out;
}

Scalar invert(const Scalar& s) {
  detail::ensure_sodium_ready();
  Scalar out;
  if (crypto_core_ristretto255_scalar_invert(out.data.data(), s.data.data()) != 0) {
    throw ProtocolError("cannot invert the zero scalar");
  }
  return out;
}

GroupElement scalar_mult(const Scalar& s, const GroupElement& p) {
  detail::ensure_sodium_ready();
  GroupElement out;
  if (crypto_scalarmult_ristretto255(out.data.data(), s.data.data(),
                                     p.data.data()) != 0) {
    throw ProtocolError("scalar multiplication produced the identity");
  }
  return out;
}

bool is_valid_element(const GroupElement& p) {
  detail::ensure_sodium_ready();
  if (is_zero(p.data)) return false;  // identity is not a protocol value
  return crypto_core_ristretto255_is_valid_point(p.data.data()) == 1;
}

std::pair<std::vector<ClientBlindState>, PsiQuery> client_blind(
    std::span<const Bytes16> ccis, std::size_t pad_to, RandomSource& rng) {
  if (ccis.size() > pad_to) {
    throw CapacityError("query of " + std::to_string(ccis.size()) +
                        " identifiers exceeds pad_to=" + std::to_string(pad_to));
  }

  // Real points land at a random subset of positions.
  std::vector<std::size_t> positions(pad_to);
  std::iota(positions.begin(), positions.end(), 0);
  rng.shuffle(positions);

  PsiQuery query;
  query.blinded_points.resize(pad_to);
  std::vector<bool> real(pad_to, false);

  std::vector<ClientBlindState> states;
  states.reserve(ccis.size());
  for (std::size_t i = 0; i < ccis.size(); ++i) {
    ClientBlindState state;
    state.blinding = random_scalar(rng);
    state.cci = ccis[i];
    state.position = positions[i];
    query.blinded_points[state.position] =
        scalar_mult(state.blinding, hash_to_group(state.cci));
    real[state.position] = true;
    states.push_back(state);
  }
  for (std::size_t i = 0; i < pad_to; ++i) {
    if (!real[i]) query.blinded_points[i] = random_element(rng);
  }
  return {std::move(states), std::move(query)};
}

PsiResponse server_respond(std::span<const Bytes16> bucket,
                           const PsiQuery& query, std::size_t response_pad,
                           RandomSource& rng) {
  if (bucket.size() > response_pad) {
    throw CapacityError("bucket of " + std::to_string(bucket.size()) +
                        " entries exceeds response_pad=" +
                        std::to_string(response_pad));
  }

  const Scalar b = random_scalar(rng);

  PsiResponse response;
  response.double_blinded_points.reserve(query.blinded_points.size());
  for (const auto& point : query.blinded_points) {
    if (!is_valid_element(point)) {
      throw ProtocolError("query contains an invalid group element");
    }
    response.double_blinded_points.push_back(scalar_mult(b, point));
  }

  response.server_set_points.reserve(response_pad);
  for (const auto& member : bucket) {
    response.server_set_points.push_back(scalar_mult(b, hash_to_group(member)));
  }
  while (response.server_set_points.size() < response_pad) {
    response.server_set_points.push_back(random_element(rng));
  }
  rng.shuffle(response.server_set_points);
  return response;
}

std::set<Bytes16> client_match(std::span<const ClientBlindState> states,
                               const PsiResponse& response) {
  std::set<GroupElement> server_set(response.server_set_points.begin(),
                                    response.server_set_points.end());
  std::set<Bytes16> matched;
  for (const auto& state : states) {
    if (state.position >= response.double_blinded_points.size()) {
      throw ProtocolError("response shorter than the query it answers");
    }
    const GroupElement unblinded = scalar_mult(
        invert(state.blinding), response.double_blinded_points[state.position]);
    if (server_set.contains(unblinded)) {
      matched.insert(state.cci);
    }
  }
  return matched;
}

}  // namespace crosshash::psi
