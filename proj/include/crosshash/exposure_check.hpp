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
#include <memory>
#include <set>
#include <string>

#include "crosshash/bucket_store.hpp"
#include "crosshash/observation_log.hpp"
#include "crosshash/psi.hpp"
#include "crosshash/wire.hpp"

namespace crosshash {

/// One padded bucket exchange. Implementations carry the transport; the
/// exposure check logic is transport-agnostic.
class QueryTransport {
 public:
  virtual ~QueryTransport() = default;

  /// Throws TransportError on network failure (retryable) and ProtocolError
  /// on a malformed or mismatched reply (fatal).
  virtual psi::PsiResponse bucket_query(const BucketId& bucket,
                                        const psi::PsiQuery& query) = 0;
};

/// Same exchange against an in-process store; used by tests and by the
/// simulator, where spinning up a network server per scenario would drown
/// the measurement in transport noise.
class LocalTransport final : public QueryTransport {
 public:
  LocalTransport(const BucketStore& store, std::size_t response_pad,
                 RandomSource& rng)
      : store_(store), response_pad_(response_pad), rng_(rng) {}

  psi::PsiResponse bucket_query(const BucketId& bucket,
                                const psi::PsiQuery& query) override;

 private:
  const BucketStore& store_;
  std::size_t response_pad_;
  RandomSource& rng_;
};

/// HTTP transport to an exposure server.
class HttpTransport final : public QueryTransport {
 public:
  HttpTransport(const std::string& host, int port);
  ~HttpTransport() override;

  psi::PsiResponse bucket_query(const BucketId& bucket,
                                const psi::PsiQuery& query) override;

  /// Posts a diagnosis upload; returns the server's newly-inserted count.
  std::uint32_t upload_diagnosis(const wire::DiagnosisUpload& upload,
                                 const std::string& bearer_token = "");

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct CheckConfig {
  std::size_t query_pad = 4;    // blinded points per request
  std::size_t request_pad = 8;  // minimum request count per check
  PairingOptions pairing;
  std::size_t match_threshold = 1;
};

struct ExposureResult {
  std::size_t matched_cci_count = 0;
  std::set<std::uint64_t> matched_intervals;  // absolute, the later identifier
  bool exposed = false;
};

/// Reconstructs candidate CCIs from the log, groups them by bucket prefix,
/// runs one padded exchange per bucket (chunked by query_pad), and pads the
/// request count up to request_pad with queries against random buckets. The
/// request sequence is shuffled so dummies are not distinguishable by
/// position.
ExposureResult check_exposure(const ObservationLog& log,
                              QueryTransport& transport,
                              const ProtocolParams& params,
                              const CheckConfig& config, RandomSource& rng);

}  // namespace crosshash
