// Copyright 2026 The egycorpus Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "egycorpus/corpus_ops.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>
#include "json.hpp"

#define XXH_INLINE_ALL
#include "xxhash.h"

#include "egycorpus/record_clean.h"

namespace egycorpus {

std::string Digest::Hex() const {
  char buf[33];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx", static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return buf;
}

Digest DigestOf(std::string_view text) {
  const XXH128_hash_t h = XXH3_128bits(text.data(), text.size());
  return Digest{h.high64, h.low64};
}

// ---------------------------------------------------------------------------

void CorpusStats::Add(std::string_view text) {
  ++records;
  words += static_cast<uint64_t>(WordCount(text));
  bytes += text.size() + 1;
}

void CorpusStats::AddDrop(std::string_view reason, uint64_t count) {
  dropped_by_reason[std::string(reason)] += count;
}

uint64_t CorpusStats::TotalDropped() const {
  uint64_t total = 0;
  for (const auto& [reason, count] : dropped_by_reason) total += count;
  return total;
}

CorpusStats& CorpusStats::operator+=(const CorpusStats& other) {
  records += other.records;
  words += other.words;
  bytes += other.bytes;
  for (const auto& [reason, count] : other.dropped_by_reason) {
    dropped_by_reason[reason] += count;
  }
  return *this;
}

std::string CorpusStats::ToJson() const {
  nlohmann::json j;
  j["records"] = records;
  j["words"] = words;
  j["bytes"] = bytes;
  j["dropped_by_reason"] = nlohmann::json::object();
  for (const auto& [reason, count] : dropped_by_reason) j["dropped_by_reason"][reason] = count;
  return j.dump(2) + "\n";
}

CorpusStats CorpusStats::FromJson(std::string_view json) {
  const nlohmann::json j = nlohmann::json::parse(json);
  CorpusStats s;
  s.records = j.at("records").get<uint64_t>();
  s.words = j.at("words").get<uint64_t>();
  s.bytes = j.at("bytes").get<uint64_t>();
  if (j.contains("dropped_by_reason")) {
    for (const auto& [reason, count] : j.at("dropped_by_reason").items()) {
      s.dropped_by_reason[reason] = count.get<uint64_t>();
    }
  }
  return s;
}

CorpusStats ComputeStats(std::span<const std::string> texts) {
  CorpusStats stats;
  for (const std::string& t : texts) stats.Add(t);
  return stats;
}

// ---------------------------------------------------------------------------

std::string_view DedupModeName(DedupMode mode) {
  return mode == DedupMode::kSingleSet ? "single" : "sharded";
}

std::optional<DedupMode> ParseDedupMode(std::string_view name) {
  if (name == "single") return DedupMode::kSingleSet;
  if (name == "sharded") return DedupMode::kSharded;
  return std::nullopt;
}

struct Deduplicator::Shard {
  absl::flat_hash_set<Digest, DigestHash> seen;
  absl::flat_hash_map<Digest, std::vector<std::string>, DigestHash> texts;
  uint64_t collisions_checked = 0;
  uint64_t true_collisions = 0;
};

Deduplicator::Deduplicator(DedupOptions options) : options_(options) {
  if (options_.mode == DedupMode::kSharded && options_.shards < 1) {
    throw std::invalid_argument("dedup shards must be >= 1");
  }
  const int n = options_.mode == DedupMode::kSharded ? options_.shards : 1;
  for (int k = 0; k < n; ++k) shards_.push_back(std::make_unique<Shard>());
}

Deduplicator::~Deduplicator() = default;

size_t Deduplicator::ShardOf(const Digest& d) const {
  // Digest-range sharding on the top bits.
  return static_cast<size_t>((static_cast<unsigned __int128>(d.hi) * shards_.size()) >> 64);
}

bool Deduplicator::AdmitInShard(Shard& shard, const Digest& digest, std::string_view text) {
  if (!options_.paranoid) return shard.seen.insert(digest).second;
  auto [it, inserted] = shard.texts.try_emplace(digest);
  if (inserted) {
    shard.seen.insert(digest);
    it->second.emplace_back(text);
    return true;
  }
  ++shard.collisions_checked;
  for (const std::string& known : it->second) {
    if (known == text) return false;
  }
  ++shard.true_collisions;
  it->second.emplace_back(text);
  return true;
}

bool Deduplicator::Admit(std::string_view text) { return Admit(DigestOf(text), text); }

bool Deduplicator::Admit(const Digest& digest, std::string_view text) {
  return AdmitInShard(*shards_[ShardOf(digest)], digest, text);
}

std::vector<bool> Deduplicator::AdmitBatch(std::span<const Digest> digests,
                                           std::span<const std::string_view> texts) {
  if (digests.size() != texts.size()) throw std::invalid_argument("digest/text size mismatch");
  std::vector<bool> keep(digests.size(), false);
  if (shards_.size() == 1) {
    for (size_t i = 0; i < digests.size(); ++i) {
      keep[i] = AdmitInShard(*shards_[0], digests[i], texts[i]);
    }
    return keep;
  }
  std::vector<std::vector<size_t>> by_shard(shards_.size());
  for (size_t i = 0; i < digests.size(); ++i) by_shard[ShardOf(digests[i])].push_back(i);
  // vector<bool> packs bits, so each shard writes its own byte vector.
  std::vector<std::vector<char>> decisions(shards_.size());
  {
    std::vector<std::jthread> workers;
    for (size_t s = 0; s < shards_.size(); ++s) {
      if (by_shard[s].empty()) continue;
      workers.emplace_back([&, s] {
        decisions[s].resize(by_shard[s].size());
        for (size_t k = 0; k < by_shard[s].size(); ++k) {
          const size_t i = by_shard[s][k];
          decisions[s][k] = AdmitInShard(*shards_[s], digests[i], texts[i]) ? 1 : 0;
        }
      });
    }
  }
  for (size_t s = 0; s < shards_.size(); ++s) {
    for (size_t k = 0; k < by_shard[s].size(); ++k) keep[by_shard[s][k]] = decisions[s][k] != 0;
  }
  return keep;
}

std::vector<bool> Deduplicator::AdmitBatch(std::span<const std::string_view> texts) {
  std::vector<Digest> digests;
  digests.reserve(texts.size());
  for (std::string_view t : texts) digests.push_back(DigestOf(t));
  return AdmitBatch(digests, texts);
}

size_t Deduplicator::unique_count() const {
  size_t n = 0;
  for (const auto& s : shards_) n += s->seen.size() + s->true_collisions;
  return n;
}

uint64_t Deduplicator::collisions_checked() const {
  uint64_t n = 0;
  for (const auto& s : shards_) n += s->collisions_checked;
  return n;
}

uint64_t Deduplicator::true_collisions() const {
  uint64_t n = 0;
  for (const auto& s : shards_) n += s->true_collisions;
  return n;
}

std::vector<CleanRecord> Dedup(std::span<const CleanRecord> records, DedupOptions options) {
  Deduplicator dedup(options);
  std::vector<std::string_view> texts;
  texts.reserve(records.size());
  for (const CleanRecord& r : records) texts.push_back(r.text);
  const std::vector<bool> keep = dedup.AdmitBatch(texts);
  std::vector<CleanRecord> out;
  for (size_t i = 0; i < records.size(); ++i) {
    if (keep[i]) out.push_back(records[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

uint64_t SplitMix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

SplitMixRng::result_type SplitMixRng::operator()() {
  state_ += 0x9E3779B97F4A7C15ULL;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

uint64_t SplitMixRng::Below(uint64_t bound) {
  uint64_t x = (*this)();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
  auto low = static_cast<uint64_t>(m);
  if (low < bound) {
    const uint64_t threshold = -bound % bound;
    while (low < threshold) {
      x = (*this)();
      m = static_cast<unsigned __int128>(x) * bound;
      low = static_cast<uint64_t>(m);
    }
  }
  return static_cast<uint64_t>(m >> 64);
}

double SplitMixRng::Unit() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

bool SampleKeep(const Digest& digest, double fraction, uint64_t seed) {
  if (fraction >= 1.0) return true;
  if (fraction <= 0.0) return false;
  const uint64_t u = SplitMix64(SplitMix64(seed ^ digest.hi) ^ digest.lo);
  // Compare 53-bit uniform against the fraction.
  return static_cast<double>(u >> 11) * 0x1.0p-53 < fraction;
}

std::vector<CleanRecord> Sample(std::span<const CleanRecord> records, double fraction,
                                uint64_t seed) {
  std::vector<CleanRecord> out;
  for (const CleanRecord& r : records) {
    if (SampleKeep(DigestOf(r.text), fraction, seed)) out.push_back(r);
  }
  return out;
}

uint64_t DevCount(uint64_t n, double train_fraction) {
  // The epsilon absorbs binary representation error such as
  // (1 - 0.9) * 5 = 0.49999999999999994, so exact halves round up.
  const double exact = (1.0 - train_fraction) * static_cast<double>(n);
  const auto dev = static_cast<uint64_t>(std::floor(exact + 0.5 + 1e-9));
  return std::min(dev, n);
}

SplitSelector::SplitSelector(uint64_t n, double train_fraction, uint64_t seed)
    : remaining_(n),
      dev_needed_(DevCount(n, train_fraction)),
      dev_total_(dev_needed_),
      state_(SplitMix64(seed ^ 0x5DEECE66DULL)) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train_fraction must be in (0,1)");
  }
}

bool SplitSelector::NextIsDev() {
  if (remaining_ == 0) throw std::logic_error("SplitSelector: more records than declared");
  SplitMixRng rng(state_);
  const bool dev = rng.Below(remaining_) < dev_needed_;
  state_ = rng();
  --remaining_;
  if (dev) --dev_needed_;
  return dev;
}

SplitResult Split(std::span<const CleanRecord> records, double train_fraction, uint64_t seed) {
  SplitSelector selector(records.size(), train_fraction, seed);
  SplitResult result;
  for (const CleanRecord& r : records) {
    (selector.NextIsDev() ? result.dev : result.train).push_back(r);
  }
  return result;
}

// ---------------------------------------------------------------------------

bool IsDecimalId(std::string_view id) {
  if (id.empty()) return false;
  for (char c : id) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

void WriteManifestLine(const CleanRecord& record, std::ostream& out) {
  if (record.source != Source::kTweet) {
    throw std::invalid_argument("manifest: record " + record.id + " is not a tweet");
  }
  if (!IsDecimalId(record.id)) {
    throw std::invalid_argument("manifest: tweet id '" + record.id + "' is not decimal");
  }
  out << record.id << '\n';
}

void WriteManifest(std::span<const CleanRecord> records, std::ostream& out) {
  for (const CleanRecord& r : records) WriteManifestLine(r, out);
}

}  // namespace egycorpus
