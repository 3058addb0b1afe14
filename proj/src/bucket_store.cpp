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

#include "crosshash/bucket_store.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>

#include "crosshash/errors.hpp"

namespace crosshash {

namespace {

constexpr std::size_t kFrameSize = 8 + kIdentifierSize + 4;

void write_or_throw(std::ofstream& out, const Bytes& data,
                    const std::filesystem::path& path) {
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) {
    throw StoreError("write failed: " + path.string());
  }
}

}  // namespace

BucketStore::BucketStore(const ProtocolParams& params) : params_(params) {
  params_.validate();
}

BucketStore::BucketStore(const ProtocolParams& params,
                         const std::filesystem::path& path)
    : params_(params), path_(path) {
  params_.validate();
  if (std::filesystem::exists(path)) {
    replay_log();
  } else {
    if (path.has_parent_path()) {
      std::filesystem::create_directories(path.parent_path());
    }
    append_.open(path, std::ios::binary | std::ios::app);
    if (!append_) throw StoreError("cannot create store log: " + path.string());
    Bytes header;
    append_u16be(header, static_cast<std::uint16_t>(params_.prefix_bits));
    write_or_throw(append_, header, path);
  }
}

void BucketStore::replay_log() {
  std::ifstream in(*path_, std::ios::binary);
  if (!in) throw StoreError("cannot open store log: " + path_->string());
  Bytes raw((std::istreambuf_iterator<char>(in)),
            std::istreambuf_iterator<char>());
  if (raw.size() < 2 || (raw.size() - 2) % kFrameSize != 0) {
    throw StoreError("store log is truncated: " + path_->string());
  }

  ByteReader reader(raw);
  const auto stored_bits = reader.read_u16be();
  if (stored_bits != static_cast<std::uint16_t>(params_.prefix_bits)) {
    throw StoreError("store log prefix_bits=" + std::to_string(stored_bits) +
                     " does not match configured prefix_bits=" +
                     std::to_string(params_.prefix_bits));
  }

  while (!reader.done()) {
    const std::uint64_t prefix = reader.read_u64be();
    CciRecord rec;
    rec.cci = reader.read_bytes16();
    rec.day_number = reader.read_u32be();
    if (prefix_of(rec.cci, params_.prefix_bits).prefix_value != prefix) {
      throw StoreError("store log frame prefix does not match its payload");
    }
    auto [it, added] = partitions_[prefix].try_emplace(rec.cci, rec.day_number);
    (void)it;
    if (added) ++total_count_;
  }

  append_.open(*path_, std::ios::binary | std::ios::app);
  if (!append_) throw StoreError("cannot append to store log: " + path_->string());
}

std::size_t BucketStore::insert(
    std::span<const ConsistentContactIdentifier> ccis) {
  std::vector<CciRecord> records;
  records.reserve(ccis.size());
  for (const auto& cci : ccis) {
    records.push_back({cci.cci_bytes, cci.day_number});
  }
  return insert_records(records);
}

std::size_t BucketStore::insert_records(std::span<const CciRecord> records) {
  std::unique_lock lock(mutex_);
  return insert_locked(records);
}

std::size_t BucketStore::insert_locked(std::span<const CciRecord> records) {
  std::vector<CciRecord> fresh;
  for (const auto& rec : records) {
    const auto prefix = prefix_of(rec.cci, params_.prefix_bits).prefix_value;
    auto [it, added] = partitions_[prefix].try_emplace(rec.cci, rec.day_number);
    (void)it;
    if (added) {
      ++total_count_;
      fresh.push_back(rec);
    }
  }
  if (!fresh.empty() && path_) {
    append_frames(fresh);
  }
  return fresh.size();
}

void BucketStore::append_frames(std::span<const CciRecord> records) {
  Bytes buf;
  buf.reserve(records.size() * kFrameSize);
  for (const auto& rec : records) {
    append_u64be(buf, prefix_of(rec.cci, params_.prefix_bits).prefix_value);
    buf.insert(buf.end(), rec.cci.begin(), rec.cci.end());
    append_u32be(buf, rec.day_number);
  }
  write_or_throw(append_, buf, *path_);
}

std::vector<Bytes16> BucketStore::query(const BucketId& bucket) const {
  if (bucket.prefix_bits != params_.prefix_bits) {
    throw DomainError("query prefix_bits=" + std::to_string(bucket.prefix_bits) +
                      " does not match store prefix_bits=" +
                      std::to_string(params_.prefix_bits));
  }
  std::shared_lock lock(mutex_);
  auto it = partitions_.find(bucket.prefix_value);
  if (it == partitions_.end()) return {};
  std::vector<Bytes16> out;
  out.reserve(it->second.size());
  for (const auto& [cci, day] : it->second) out.push_back(cci);
  return out;
}

bool BucketStore::contains(const Bytes16& cci) const {
  std::shared_lock lock(mutex_);
  auto it = partitions_.find(prefix_of(cci, params_.prefix_bits).prefix_value);
  return it != partitions_.end() && it->second.contains(cci);
}

std::size_t BucketStore::total_count() const {
  std::shared_lock lock(mutex_);
  return total_count_;
}

std::size_t BucketStore::occupied_buckets() const {
  std::shared_lock lock(mutex_);
  return partitions_.size();
}

BucketAudit BucketStore::audit() const {
  std::shared_lock lock(mutex_);
  BucketAudit out;
  const double prefix_space = std::ldexp(1.0, params_.prefix_bits);
  out.empty_prefix_fraction =
      1.0 - static_cast<double>(partitions_.size()) / prefix_space;
  if (partitions_.empty()) return out;

  std::vector<std::size_t> sizes;
  sizes.reserve(partitions_.size());
  for (const auto& [prefix, members] : partitions_) {
    sizes.push_back(members.size());
  }
  std::sort(sizes.begin(), sizes.end());
  out.min_bucket_size = sizes.front();
  out.median_bucket_size = sizes[sizes.size() / 2];
  return out;
}

std::size_t BucketStore::expire(std::uint32_t current_day) {
  std::unique_lock lock(mutex_);
  std::size_t dropped = 0;
  for (auto part = partitions_.begin(); part != partitions_.end();) {
    for (auto it = part->second.begin(); it != part->second.end();) {
      const bool expired =
          current_day >= it->second &&
          current_day - it->second >=
              static_cast<std::uint32_t>(params_.retention_days);
      if (expired) {
        it = part->second.erase(it);
        ++dropped;
        --total_count_;
      } else {
        ++it;
      }
    }
    part = part->second.empty() ? partitions_.erase(part) : std::next(part);
  }
  if (dropped > 0 && path_) {
    rewrite_log();
  }
  return dropped;
}

void BucketStore::compact() {
  std::unique_lock lock(mutex_);
  if (path_) rewrite_log();
}

void BucketStore::rewrite_log() {
  const std::filesystem::path tmp = *path_;
  const std::filesystem::path tmp_path = tmp.string() + ".compact";

  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out) throw StoreError("cannot write compacted log: " + tmp_path.string());
    Bytes buf;
    append_u16be(buf, static_cast<std::uint16_t>(params_.prefix_bits));
    for (const auto& [prefix, members] : partitions_) {
      for (const auto& [cci, day] : members) {
        append_u64be(buf, prefix);
        buf.insert(buf.end(), cci.begin(), cci.end());
        append_u32be(buf, day);
      }
    }
    write_or_throw(out, buf, tmp_path);
  }

  append_.close();
  std::filesystem::rename(tmp_path, *path_);
  append_.open(*path_, std::ios::binary | std::ios::app);
  if (!append_) throw StoreError("cannot reopen store log: " + path_->string());
}

std::vector<Bytes16> BucketStore::export_all() const {
  std::shared_lock lock(mutex_);
  std::vector<Bytes16> out;
  out.reserve(total_count_);
  for (const auto& [prefix, members] : partitions_) {
    for (const auto& [cci, day] : members) out.push_back(cci);
  }
  return out;
}

}  // namespace crosshash
