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

#include "crosshash/server.hpp"

#include <cctype>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"

#include "crosshash/errors.hpp"
#include "crosshash/rng.hpp"

namespace crosshash {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
    ++begin;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
    --end;
  }
  return s.substr(begin, end - begin);
}

long long parse_integer(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long long parsed = 0;
  try {
    parsed = std::stoll(value, &used);
  } catch (const std::exception&) {
    throw DomainError(key + ": not an integer: '" + value + "'");
  }
  if (used != value.size()) {
    throw DomainError(key + ": not an integer: '" + value + "'");
  }
  return parsed;
}

int parse_int(const std::string& key, const std::string& value, int lo,
              int hi) {
  const long long parsed = parse_integer(key, value);
  if (parsed < lo || parsed > hi) {
    throw DomainError(key + ": " + value + " is outside [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(parsed);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw DomainError(key + ": expected a boolean, got '" + value + "'");
}

void apply_key(ServerConfig& config, const std::string& key,
               const std::string& value) {
  if (key == "rotation_minutes") {
    config.params.rotation_minutes = parse_int(key, value, 1, 1440);
  } else if (key == "k_steps") {
    config.params.k_steps = parse_int(key, value, 1, 1440);
  } else if (key == "prefix_bits") {
    config.params.prefix_bits = parse_int(key, value, 4, 64);
  } else if (key == "retention_days") {
    config.params.retention_days = parse_int(key, value, 1, 3650);
  } else if (key == "query_pad") {
    config.query_pad = static_cast<std::size_t>(parse_int(key, value, 1, 256));
  } else if (key == "response_pad") {
    config.response_pad =
        static_cast<std::size_t>(parse_int(key, value, 1, 65535));
  } else if (key == "listen_host") {
    config.listen_host = value;
  } else if (key == "listen_port") {
    config.listen_port = parse_int(key, value, 0, 65535);
  } else if (key == "store_path") {
    config.store_path = value;
  } else if (key == "export_enabled") {
    config.export_enabled = parse_bool(key, value);
  } else if (key == "upload_token") {
    config.upload_token = value;
  } else if (key == "current_day") {
    config.current_day =
        static_cast<std::uint32_t>(parse_integer(key, value));
  } else {
    throw DomainError("unknown config key '" + key + "'");
  }
}

std::uint32_t wall_clock_day() {
  return static_cast<std::uint32_t>(std::time(nullptr) / 86400);
}

void fail(httplib::Response& res, int status, const std::string& message) {
  res.status = status;
  res.set_content(message + "\n", "text/plain");
}

std::span<const std::uint8_t> body_span(const httplib::Request& req) {
  return {reinterpret_cast<const std::uint8_t*>(req.body.data()),
          req.body.size()};
}

}  // namespace

ServerConfig load_server_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DomainError("cannot read config file " + path.string());
  }
  ServerConfig config;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError(path.string() + ":" + std::to_string(line_number) +
                        ": expected key=value");
    }
    apply_key(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  config.params.validate();
  return config;
}

void apply_env_overrides(ServerConfig& config) {
  static constexpr const char* kKeys[] = {
      "rotation_minutes", "k_steps",        "prefix_bits", "retention_days",
      "query_pad",        "response_pad",   "listen_host", "listen_port",
      "store_path",       "export_enabled", "upload_token", "current_day",
  };
  for (const char* key : kKeys) {
    std::string env_name = "CROSSHASH_";
    for (const char* c = key; *c != '\0'; ++c) {
      env_name.push_back(
          static_cast<char>(std::toupper(static_cast<unsigned char>(*c))));
    }
    if (const char* value = std::getenv(env_name.c_str())) {
      apply_key(config, key, value);
    }
  }
  config.params.validate();
}

struct ExposureServer::Http {
  httplib::Server server;
  std::thread thread;
  int bound_port = 0;
};

ExposureServer::ExposureServer(ServerConfig config)
    : config_(std::move(config)), http_(std::make_unique<Http>()) {
  config_.params.validate();
  if (config_.query_pad == 0 || config_.response_pad == 0) {
    throw DomainError("query_pad and response_pad must be at least 1");
  }
  store_ = config_.store_path.empty()
               ? std::make_unique<BucketStore>(config_.params)
               : std::make_unique<BucketStore>(config_.params,
                                               config_.store_path);

  auto& server = http_->server;
  server.set_payload_max_length(1 << 20);

  server.Post("/v1/diagnosis", [this](const httplib::Request& req,
                                      httplib::Response& res) {
    if (!config_.upload_token.empty() &&
        req.get_header_value("Authorization") !=
            "Bearer " + config_.upload_token) {
      fail(res, 401, "missing or invalid upload authorization");
      return;
    }
    try {
      const std::uint32_t inserted =
          handle_upload(wire::decode_diagnosis(body_span(req)));
      const Bytes reply = wire::encode_upload_reply(inserted);
      res.set_content(std::string(reply.begin(), reply.end()),
                      "application/octet-stream");
    } catch (const ProtocolError& e) {
      fail(res, 400, e.what());
    } catch (const DomainError& e) {
      fail(res, 400, e.what());
    }
  });

  server.Post("/v1/query", [this](const httplib::Request& req,
                                  httplib::Response& res) {
    try {
      const auto [bucket, query] = wire::decode_query(body_span(req));
      const Bytes reply =
          wire::encode_response(handle_bucket_query(bucket, query));
      res.set_content(std::string(reply.begin(), reply.end()),
                      "application/octet-stream");
    } catch (const CapacityError& e) {
      fail(res, 507, e.what());
    } catch (const ProtocolError& e) {
      fail(res, 400, e.what());
    } catch (const DomainError& e) {
      fail(res, 400, e.what());
    }
  });

  server.Get("/v1/export", [this](const httplib::Request&,
                                  httplib::Response& res) {
    if (!config_.export_enabled) {
      fail(res, 404, "export is not enabled");
      return;
    }
    std::string body;
    for (const Bytes16& cci : store_->export_all()) {
      body.append(reinterpret_cast<const char*>(cci.data()), cci.size());
    }
    res.set_content(std::move(body), "application/octet-stream");
  });
}

ExposureServer::~ExposureServer() { stop(); }

std::uint32_t ExposureServer::validation_day() const {
  return config_.current_day.value_or(wall_clock_day());
}

std::uint32_t ExposureServer::handle_upload(
    const wire::DiagnosisUpload& upload) {
  const std::uint32_t today = validation_day();
  const std::uint32_t retention =
      static_cast<std::uint32_t>(config_.params.retention_days);

  if (upload.entries.empty()) {
    throw ProtocolError("upload carries no keys");
  }
  if (upload.entries.size() > static_cast<std::size_t>(retention)) {
    throw ProtocolError("upload carries more keys than the retention window");
  }
  std::optional<std::uint32_t> previous_day;
  for (const auto& entry : upload.entries) {
    if (previous_day && entry.day_number <= *previous_day) {
      throw ProtocolError("upload days must be strictly increasing");
    }
    previous_day = entry.day_number;
    if (entry.day_number > today) {
      throw ProtocolError("upload day " + std::to_string(entry.day_number) +
                          " is in the future");
    }
    if (today - entry.day_number >= retention) {
      throw ProtocolError("upload day " + std::to_string(entry.day_number) +
                          " is outside the retention window");
    }
  }

  std::vector<ConsistentContactIdentifier> ccis;
  ccis.reserve(upload.entries.size() *
               static_cast<std::size_t>(config_.params.intervals_per_day()));
  for (const auto& entry : upload.entries) {
    TemporaryExposureKey tek{entry.tek, entry.day_number};
    auto derived = derive_tek_ccis(tek, config_.params);
    ccis.insert(ccis.end(), derived.begin(), derived.end());
  }
  return static_cast<std::uint32_t>(store_->insert(ccis));
}

psi::PsiResponse ExposureServer::handle_bucket_query(
    const BucketId& bucket, const psi::PsiQuery& query) {
  if (bucket.prefix_bits != config_.params.prefix_bits) {
    throw ProtocolError("query prefix width does not match this deployment");
  }
  if (query.blinded_points.size() != config_.query_pad) {
    throw ProtocolError("query must carry exactly " +
                        std::to_string(config_.query_pad) +
                        " blinded points");
  }
  SystemRandom rng;
  return psi::server_respond(store_->query(bucket), query, config_.response_pad,
                             rng);
}

std::size_t ExposureServer::expire_now() {
  return store_->expire(validation_day());
}

void ExposureServer::start() {
  auto& server = http_->server;
  if (server.is_running()) return;
  if (config_.listen_port == 0) {
    http_->bound_port = server.bind_to_any_port(config_.listen_host);
    if (http_->bound_port <= 0) {
      throw TransportError("cannot bind to " + config_.listen_host);
    }
  } else {
    if (!server.bind_to_port(config_.listen_host, config_.listen_port)) {
      throw TransportError("cannot bind to " + config_.listen_host + ":" +
                           std::to_string(config_.listen_port));
    }
    http_->bound_port = config_.listen_port;
  }
  http_->thread = std::thread([this] { http_->server.listen_after_bind(); });
  http_->server.wait_until_ready();
}

void ExposureServer::stop() {
  if (http_->thread.joinable()) {
    http_->server.stop();
    http_->thread.join();
  }
}

int ExposureServer::port() const { return http_->bound_port; }

}  // namespace crosshash
