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

#include "crosshash/exposure_check.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "httplib.h"

#include "crosshash/errors.hpp"

namespace crosshash {

psi::PsiResponse LocalTransport::bucket_query(const BucketId& bucket,
                                              const psi::PsiQuery& query) {
  if (bucket.prefix_bits != store_.params().prefix_bits) {
    throw ProtocolError("query prefix width does not match the store");
  }
  return psi::server_respond(store_.query(bucket), query, response_pad_, rng_);
}

struct HttpTransport::Impl {
  Impl(const std::string& host, int port)
      : endpoint(host + ":" + std::to_string(port)), client(host, port) {
    client.set_connection_timeout(5, 0);
    client.set_read_timeout(30, 0);
    client.set_write_timeout(30, 0);
  }

  static std::string as_body(const Bytes& bytes) {
    return std::string(reinterpret_cast<const char*>(bytes.data()),
                       bytes.size());
  }

  static std::span<const std::uint8_t> as_span(const std::string& body) {
    return {reinterpret_cast<const std::uint8_t*>(body.data()), body.size()};
  }

  std::string post(const std::string& path, const Bytes& body,
                   const std::string& bearer_token) {
    httplib::Headers headers;
    if (!bearer_token.empty()) {
      headers.emplace("Authorization", "Bearer " + bearer_token);
    }
    auto res = client.Post(path, headers, as_body(body),
                           "application/octet-stream");
    if (!res) {
      throw TransportError("request to " + endpoint + path + " failed: " +
                           httplib::to_string(res.error()));
    }
    if (res->status != 200) {
      throw ProtocolError(endpoint + path + " returned status " +
                          std::to_string(res->status));
    }
    return std::move(res->body);
  }

  std::string endpoint;
  httplib::Client client;
};

HttpTransport::HttpTransport(const std::string& host, int port)
    : impl_(std::make_unique<Impl>(host, port)) {}

HttpTransport::~HttpTransport() = default;

psi::PsiResponse HttpTransport::bucket_query(const BucketId& bucket,
                                             const psi::PsiQuery& query) {
  const std::string body =
      impl_->post("/v1/query", wire::encode_query(bucket, query), "");
  return wire::decode_response(Impl::as_span(body));
}

std::uint32_t HttpTransport::upload_diagnosis(
    const wire::DiagnosisUpload& upload, const std::string& bearer_token) {
  const std::string body = impl_->post(
      "/v1/diagnosis", wire::encode_diagnosis(upload), bearer_token);
  return wire::decode_upload_reply(Impl::as_span(body));
}

namespace {

// One padded exchange: a bucket plus the real identifiers queried inside it.
// Dummy requests carry no identifiers and blind to pure padding.
struct BucketRequest {
  BucketId bucket;
  std::vector<Bytes16> ccis;
};

BucketId random_bucket(int prefix_bits, RandomSource& rng) {
  BucketId bucket;
  bucket.prefix_bits = prefix_bits;
  bucket.prefix_value =
      prefix_bits == 64
          ? rng.next_u64()
          : rng.uniform_below(std::uint64_t{1} << prefix_bits);
  return bucket;
}

}  // namespace

ExposureResult check_exposure(const ObservationLog& log,
                              QueryTransport& transport,
                              const ProtocolParams& params,
                              const CheckConfig& config, RandomSource& rng) {
  params.validate();
  if (config.query_pad == 0) {
    throw DomainError("query_pad must be at least 1");
  }

  const std::vector<ConsistentContactIdentifier> candidates =
      candidate_ccis(log, params, config.pairing);

  // Distinct candidate values, each mapped back to the intervals (of the
  // later identifier) it was formed at. Duplicates across pairs collapse so
  // a repeated sighting costs one query slot, not several.
  std::map<Bytes16, std::set<std::uint64_t>> intervals_by_cci;
  for (const auto& cci : candidates) {
    const std::uint64_t interval =
        static_cast<std::uint64_t>(cci.day_number) *
            static_cast<std::uint64_t>(params.intervals_per_day()) +
        cci.interval_index;
    intervals_by_cci[cci.cci_bytes].insert(interval);
  }

  std::map<BucketId, std::vector<Bytes16>> by_bucket;
  for (const auto& [cci, intervals] : intervals_by_cci) {
    by_bucket[prefix_of(cci, params.prefix_bits)].push_back(cci);
  }

  std::vector<BucketRequest> requests;
  for (auto& [bucket, ccis] : by_bucket) {
    for (std::size_t begin = 0; begin < ccis.size();
         begin += config.query_pad) {
      const std::size_t end =
          std::min(begin + config.query_pad, ccis.size());
      requests.push_back(
          {bucket, {ccis.begin() + static_cast<std::ptrdiff_t>(begin),
                    ccis.begin() + static_cast<std::ptrdiff_t>(end)}});
    }
  }
  while (requests.size() < config.request_pad) {
    requests.push_back({random_bucket(params.prefix_bits, rng), {}});
  }
  rng.shuffle(requests);

  std::set<Bytes16> matched;
  for (const auto& request : requests) {
    auto [states, query] = psi::client_blind(request.ccis, config.query_pad,
                                             rng);
    const psi::PsiResponse response =
        transport.bucket_query(request.bucket, query);
    for (const auto& cci : psi::client_match(states, response)) {
      matched.insert(cci);
    }
  }

  ExposureResult result;
  result.matched_cci_count = matched.size();
  for (const auto& cci : matched) {
    const auto& intervals = intervals_by_cci.at(cci);
    result.matched_intervals.insert(intervals.begin(), intervals.end());
  }
  result.exposed = result.matched_cci_count >= config.match_threshold;
  return result;
}

}  // namespace crosshash
