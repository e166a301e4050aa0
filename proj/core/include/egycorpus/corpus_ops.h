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

#ifndef EGYCORPUS_CORPUS_OPS_H_
#define EGYCORPUS_CORPUS_OPS_H_

#include <cstdint>
#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "egycorpus/record.h"

namespace egycorpus {

// 128-bit content digest (XXH3-128 of the exact UTF-8 bytes).
struct Digest {
  uint64_t hi = 0;
  uint64_t lo = 0;

  auto operator<=>(const Digest&) const = default;
  std::string Hex() const;
};

Digest DigestOf(std::string_view text);

struct DigestHash {
  size_t operator()(const Digest& d) const noexcept {
    return static_cast<size_t>(d.lo ^ (d.hi * 0x9E3779B97F4A7C15ULL));
  }
};

// ---------------------------------------------------------------------------
// Statistics

struct CorpusStats {
  uint64_t records = 0;
  uint64_t words = 0;
  uint64_t bytes = 0;  // UTF-8 text plus one newline per record
  std::map<std::string, uint64_t> dropped_by_reason;

  void Add(std::string_view text);
  void AddDrop(std::string_view reason, uint64_t count = 1);
  uint64_t TotalDropped() const;

  CorpusStats& operator+=(const CorpusStats& other);
  friend CorpusStats operator+(CorpusStats a, const CorpusStats& b) { return a += b; }
  bool operator==(const CorpusStats&) const = default;

  // Pretty-printed JSON with keys records, words, bytes, dropped_by_reason.
  std::string ToJson() const;
  static CorpusStats FromJson(std::string_view json);
};

CorpusStats ComputeStats(std::span<const std::string> texts);

// ---------------------------------------------------------------------------
// Deduplication

enum class DedupMode { kSingleSet, kSharded };

std::string_view DedupModeName(DedupMode mode);
std::optional<DedupMode> ParseDedupMode(std::string_view name);

struct DedupOptions {
  DedupMode mode = DedupMode::kSingleSet;
  int shards = 8;         // kSharded only
  bool paranoid = false;  // keep full texts and compare on digest hits
};

// State of a streaming first-occurrence filter. Feed batches in input order;
// the returned flags say which records to keep. Both modes give identical
// decisions: identical texts always land in the same digest-range shard and
// each shard is scanned in input order.
class Deduplicator {
 public:
  explicit Deduplicator(DedupOptions options = {});
  ~Deduplicator();
  Deduplicator(const Deduplicator&) = delete;
  Deduplicator& operator=(const Deduplicator&) = delete;

  bool Admit(std::string_view text);
  bool Admit(const Digest& digest, std::string_view text);

  // Batch form; digests[i] must be DigestOf(texts[i]).
  std::vector<bool> AdmitBatch(std::span<const Digest> digests,
                               std::span<const std::string_view> texts);
  std::vector<bool> AdmitBatch(std::span<const std::string_view> texts);

  size_t unique_count() const;
  uint64_t collisions_checked() const;
  // Distinct texts that shared a digest (only detectable in paranoid mode).
  uint64_t true_collisions() const;
  const DedupOptions& options() const { return options_; }

 private:
  struct Shard;
  size_t ShardOf(const Digest& d) const;
  bool AdmitInShard(Shard& shard, const Digest& digest, std::string_view text);

  DedupOptions options_;
  std::vector<std::unique_ptr<Shard>> shards_;
};

// Convenience: first-occurrence filter over a whole vector.
std::vector<CleanRecord> Dedup(std::span<const CleanRecord> records, DedupOptions options = {});

// ---------------------------------------------------------------------------
// Sampling and splitting

// Bernoulli keep decision keyed on (seed, digest); identical for a record
// wherever it appears (single stream or any shard).
bool SampleKeep(const Digest& digest, double fraction, uint64_t seed);

std::vector<CleanRecord> Sample(std::span<const CleanRecord> records, double fraction,
                                uint64_t seed);

// round((1 - train_fraction) * n) with halves rounded up.
uint64_t DevCount(uint64_t n, double train_fraction);

// Sequential selection of exactly DevCount(n, f) dev records among n,
// uniformly over subsets, reproducible for a seed. Call Next() once per
// record in input order.
class SplitSelector {
 public:
  SplitSelector(uint64_t n, double train_fraction, uint64_t seed);
  bool NextIsDev();
  uint64_t dev_total() const { return dev_total_; }

 private:
  uint64_t remaining_;
  uint64_t dev_needed_;
  uint64_t dev_total_;
  uint64_t state_;
};

struct SplitResult {
  std::vector<CleanRecord> train;
  std::vector<CleanRecord> dev;
};

SplitResult Split(std::span<const CleanRecord> records, double train_fraction, uint64_t seed);

// ---------------------------------------------------------------------------
// Release manifest

bool IsDecimalId(std::string_view id);

// One tweet ID per line in corpus order. Throws std::invalid_argument for a
// non-tweet record or a non-decimal ID.
void WriteManifest(std::span<const CleanRecord> records, std::ostream& out);
void WriteManifestLine(const CleanRecord& record, std::ostream& out);

// ---------------------------------------------------------------------------
// Deterministic RNG helpers shared by the randomized operations.

uint64_t SplitMix64(uint64_t x);

// Small counter-based generator (SplitMix64 stream). Satisfies
// UniformRandomBitGenerator; results do not depend on the standard library.
class SplitMixRng {
 public:
  using result_type = uint64_t;
  explicit SplitMixRng(uint64_t seed) : state_(seed) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();
  // Uniform integer in [0, bound), bound > 0 (Lemire's method).
  uint64_t Below(uint64_t bound);
  // Uniform double in [0, 1) with 53 random bits.
  double Unit();

 private:
  uint64_t state_;
};

}  // namespace egycorpus

#endif  // EGYCORPUS_CORPUS_OPS_H_
