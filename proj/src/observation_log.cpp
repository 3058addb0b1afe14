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

#include "crosshash/observation_log.hpp"

#include <algorithm>
#include <fstream>

#include "crosshash/errors.hpp"

namespace crosshash {

ObservationLog::ObservationLog(const ProtocolParams& params) : params_(params) {
  params_.validate();
}

void ObservationLog::record(std::uint64_t absolute_interval,
                            const Bytes16& rpi) {
  auto& slot = records_[absolute_interval];
  if (std::find(slot.begin(), slot.end(), rpi) == slot.end()) {
    slot.push_back(rpi);
    ++count_;
  }
  latest_interval_ = std::max(latest_interval_, absolute_interval);
  prune();
}

void ObservationLog::prune() {
  const std::uint64_t retention =
      static_cast<std::uint64_t>(params_.retention_days) *
      static_cast<std::uint64_t>(params_.intervals_per_day());
  if (latest_interval_ < retention) return;
  const std::uint64_t cutoff = latest_interval_ - retention;  // inclusive
  auto end = records_.upper_bound(cutoff);
  for (auto it = records_.begin(); it != end; ++it) {
    count_ -= it->second.size();
  }
  records_.erase(records_.begin(), end);
}

std::size_t ObservationLog::size() const { return count_; }

const std::vector<Bytes16>* ObservationLog::at(std::uint64_t interval) const {
  auto it = records_.find(interval);
  return it == records_.end() ? nullptr : &it->second;
}

void ObservationLog::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StoreError("cannot write observation log: " + path.string());
  Bytes buf;
  buf.reserve(count_ * (8 + kIdentifierSize));
  for (const auto& [interval, rpis] : records_) {
    for (const auto& rpi : rpis) {
      append_u64be(buf, interval);
      buf.insert(buf.end(), rpi.begin(), rpi.end());
    }
  }
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
  if (!out) throw StoreError("write failed: " + path.string());
}

ObservationLog ObservationLog::load(const std::filesystem::path& path,
                                    const ProtocolParams& params) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("cannot open observation log: " + path.string());
  Bytes raw((std::istreambuf_iterator<char>(in)),
            std::istreambuf_iterator<char>());
  if (raw.size() % (8 + kIdentifierSize) != 0) {
    throw StoreError("observation log is truncated: " + path.string());
  }
  ObservationLog log(params);
  ByteReader reader(raw);
  while (!reader.done()) {
    const std::uint64_t interval = reader.read_u64be();
    const Bytes16 rpi = reader.read_bytes16();
    log.record(interval, rpi);
  }
  return log;
}

std::vector<ConsistentContactIdentifier> candidate_ccis(
    const ObservationLog& log, const ProtocolParams& params,
    const PairingOptions& options) {
  params.validate();
  if (options.tolerance < 0 || options.tolerance > 1) {
    throw DomainError("pairing tolerance must be 0 or 1");
  }

  const auto ipd = static_cast<std::uint64_t>(params.intervals_per_day());
  std::vector<ConsistentContactIdentifier> out;

  for (const auto& [newer_interval, newer_rpis] : log.by_interval()) {
    std::size_t emitted = 0;
    for (int delta = -options.tolerance; delta <= options.tolerance; ++delta) {
      const std::int64_t gap = params.k_steps + delta;
      if (gap < 1 || static_cast<std::uint64_t>(gap) > newer_interval) continue;
      const auto* older_rpis =
          log.at(newer_interval - static_cast<std::uint64_t>(gap));
      if (older_rpis == nullptr) continue;
      for (const auto& newer : newer_rpis) {
        for (const auto& older : *older_rpis) {
          if (emitted >= options.per_interval_cap) break;
          ConsistentContactIdentifier cci;
          cci.cci_bytes = cross_hash(older, newer);
          cci.day_number = static_cast<std::uint32_t>(newer_interval / ipd);
          cci.interval_index = static_cast<std::uint32_t>(newer_interval % ipd);
          out.push_back(cci);
          ++emitted;
        }
      }
    }
  }
  return out;
}

}  // namespace crosshash
