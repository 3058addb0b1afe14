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
#include <fstream>
#include <optional>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "crosshash/identifiers.hpp"

namespace crosshash {

/// One disclosed CCI with the day it was derived for, which drives expiry.
struct CciRecord {
  Bytes16 cci{};
  std::uint32_t day_number = 0;
};

struct BucketAudit {
  std::size_t min_bucket_size = 0;     // over occupied buckets; 0 when empty
  std::size_t median_bucket_size = 0;  // over occupied buckets; 0 when empty
  double empty_prefix_fraction = 1.0;  // share of the 2^prefix_bits space
};

/// Partitioned storage of disclosed CCIs, addressed by hash prefix. Each CCI
/// lives in exactly the partition named by its prefix, so a query for one
/// bucket reveals membership only up to the prefix population.
///
/// Concurrency: many readers, one writer. An insertion batch is atomic with
/// respect to queries.
///
/// Persistence: an append-only record log. Layout:
///   header  u16-BE prefix_bits
///   frame   u64-BE prefix_value || 16-byte cci || u32-BE day_number
/// Frames are appended on insert; expire() and compact() rewrite the file
/// through a temp-file rename.
class BucketStore {
 public:
  /// In-memory store.
  explicit BucketStore(const ProtocolParams& params);

  /// Persistent store. Replays the log at `path` if it exists (throws
  /// StoreError on corruption or a prefix_bits mismatch), creates it
  /// otherwise. New inserts are appended.
  BucketStore(const ProtocolParams& params, const std::filesystem::path& path);

  BucketStore(const BucketStore&) = delete;
  BucketStore& operator=(const BucketStore&) = delete;

  /// Inserts each CCI into the partition named by its prefix. Returns how
  /// many were new; re-inserting an existing CCI is a no-op.
  std::size_t insert(std::span<const ConsistentContactIdentifier> ccis);
  std::size_t insert_records(std::span<const CciRecord> records);

  /// The stored CCIs whose prefix equals `bucket`; empty when none.
  /// Throws DomainError when bucket.prefix_bits mismatches the store params.
  std::vector<Bytes16> query(const BucketId& bucket) const;

  bool contains(const Bytes16& cci) const;

  std::size_t total_count() const;
  std::size_t occupied_buckets() const;

  BucketAudit audit() const;

  /// Drops every record whose day_number is at least retention_days old
  /// relative to current_day, then compacts the log. Returns the number of
  /// records dropped.
  std::size_t expire(std::uint32_t current_day);

  /// Rewrites the log from memory, dropping superseded frames.
  void compact();

  /// Every stored CCI, in unspecified order.
  std::vector<Bytes16> export_all() const;

  const ProtocolParams& params() const { return params_; }

 private:
  using Partition = std::unordered_map<Bytes16, std::uint32_t, Bytes16Hash>;

  std::size_t insert_locked(std::span<const CciRecord> records);
  void append_frames(std::span<const CciRecord> records);
  void replay_log();
  void rewrite_log();

  ProtocolParams params_;
  std::optional<std::filesystem::path> path_;
  std::ofstream append_;

  mutable std::shared_mutex mutex_;
  std::unordered_map<std::uint64_t, Partition> partitions_;
  std::size_t total_count_ = 0;
};

}  // namespace crosshash
