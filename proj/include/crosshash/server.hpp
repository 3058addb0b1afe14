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
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "crosshash/bucket_store.hpp"
#include "crosshash/psi.hpp"
#include "crosshash/wire.hpp"

namespace crosshash {

struct ServerConfig {
  ProtocolParams params;

  /// Exact number of blinded points a query must carry. Enforcing one shape
  /// keeps request sizes from leaking how many candidates a client holds.
  std::size_t query_pad = 4;

  /// Response set size; buckets that outgrow it are rejected rather than
  /// silently truncated.
  std::size_t response_pad = 1024;

  std::string listen_host = "127.0.0.1";
  int listen_port = 8420;  // 0 picks an ephemeral port

  /// Empty runs in-memory; otherwise the store log lives here.
  std::filesystem::path store_path;

  /// Serves GET /v1/export (the full CCI set) when true. Off by default:
  /// the export exists for mirror operators, not for the public endpoint.
  bool export_enabled = false;

  /// When set, diagnosis uploads must carry it as a bearer token. Stands in
  /// for the health-authority authorization step.
  std::string upload_token;

  /// Fixed "today" for upload-window validation. Unset uses the wall clock.
  std::optional<std::uint32_t> current_day;
};

/// Parses a key=value config file ('#' starts a comment). Unknown keys are
/// rejected. Throws DomainError on unreadable files or bad values.
ServerConfig load_server_config(const std::filesystem::path& path);

/// Applies CROSSHASH_* environment variables (CROSSHASH_LISTEN_PORT,
/// CROSSHASH_UPLOAD_TOKEN, ...) on top of `config`. Environment wins over
/// file values so deployments can keep secrets out of config files.
void apply_env_overrides(ServerConfig& config);

/// The disclosure endpoint: accepts diagnosis uploads, expands them into
/// CCIs, and answers padded bucket queries. HTTP status mapping:
///   400  malformed body, wrong query shape, upload outside the day window
///   401  missing or wrong upload token
///   404  unknown route, or export while disabled
///   507  bucket grew past response_pad
class ExposureServer {
 public:
  explicit ExposureServer(ServerConfig config);
  ~ExposureServer();

  ExposureServer(const ExposureServer&) = delete;
  ExposureServer& operator=(const ExposureServer&) = delete;

  /// Core of POST /v1/diagnosis, callable in-process. Validates the window
  /// and ordering, derives each TEK's CCIs, returns how many were new.
  /// Throws ProtocolError on an invalid upload.
  std::uint32_t handle_upload(const wire::DiagnosisUpload& upload);

  /// Core of POST /v1/query. Throws ProtocolError on a shape mismatch and
  /// CapacityError when the bucket exceeds response_pad.
  psi::PsiResponse handle_bucket_query(const BucketId& bucket,
                                       const psi::PsiQuery& query);

  /// Drops expired records as of the validation day. Returns count dropped.
  std::size_t expire_now();

  /// Binds and serves on a background thread; returns once ready.
  /// Throws TransportError when the address cannot be bound.
  void start();
  void stop();

  /// Bound port; meaningful after start() (resolves an ephemeral request).
  int port() const;

  std::uint32_t validation_day() const;

  BucketStore& store() { return *store_; }
  const ServerConfig& config() const { return config_; }

 private:
  struct Http;

  ServerConfig config_;
  std::unique_ptr<BucketStore> store_;
  std::unique_ptr<Http> http_;
};

}  // namespace crosshash
