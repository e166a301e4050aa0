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

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

namespace egycorpus {
namespace {

CleanRecord Rec(std::string text, std::string id = "1") {
  return {std::move(id), std::move(text), Source::kTweet};
}

std::vector<std::string> Texts(const std::vector<CleanRecord>& records) {
  std::vector<std::string> out;
  for (const auto& r : records) out.push_back(r.text);
  return out;
}

// Records with planted duplicates drawn from a small pool.
std::vector<CleanRecord> Planted(size_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CleanRecord> out;
  for (size_t i = 0; i < n; ++i) {
    std::string text = rng() % 3 == 0 ? "dup " + std::to_string(rng() % 50)
                                       : "uniq " + std::to_string(rng());
    out.push_back(Rec(std::move(text), std::to_string(i)));
  }
  return out;
}

// O(n^2) first-occurrence oracle.
std::vector<CleanRecord> BruteForceDedup(const std::vector<CleanRecord>& in) {
  std::vector<CleanRecord> out;
  for (size_t i = 0; i < in.size(); ++i) {
    bool seen = false;
    for (size_t j = 0; j < i && !seen; ++j) seen = in[j].text == in[i].text;
    if (!seen) out.push_back(in[i]);
  }
  return out;
}

TEST(DigestTest, StableAndDistinct) {
  EXPECT_EQ(DigestOf("abc"), DigestOf("abc"));
  EXPECT_NE(DigestOf("abc"), DigestOf("abd"));
  EXPECT_EQ(DigestOf("").Hex().size(), 32u);
}

TEST(DedupTest, Examples) {
  EXPECT_EQ(Texts(Dedup(std::vector{Rec("a"), Rec("b"), Rec("a")})),
            (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(Texts(Dedup(std::vector{Rec("a")})), std::vector<std::string>{"a"});
  EXPECT_TRUE(Dedup(std::vector<CleanRecord>{}).empty());
}

TEST(DedupTest, MatchesBruteForceInAllModes) {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const auto records = Planted(1000, seed);
    const auto expect = BruteForceDedup(records);
    ASSERT_LT(expect.size(), records.size());
    for (bool paranoid : {false, true}) {
      EXPECT_EQ(Dedup(records, {DedupMode::kSingleSet, 1, paranoid}), expect);
      for (int shards : {1, 2, 7, 16}) {
        EXPECT_EQ(Dedup(records, {DedupMode::kSharded, shards, paranoid}), expect);
      }
    }
  }
}

TEST(DedupTest, BatchAdmissionMatchesStreaming) {
  const auto records = Planted(1000, 9);
  for (DedupMode mode : {DedupMode::kSingleSet, DedupMode::kSharded}) {
    Deduplicator streaming({mode, 4, false});
    Deduplicator batched({mode, 4, false});
    std::vector<bool> expect;
    for (const auto& r : records) expect.push_back(streaming.Admit(r.text));
    std::vector<bool> got;
    for (size_t start = 0; start < records.size(); start += 97) {
      std::vector<std::string_view> views;
      for (size_t i = start; i < std::min(records.size(), start + 97); ++i) {
        views.push_back(records[i].text);
      }
      const auto part = batched.AdmitBatch(views);
      got.insert(got.end(), part.begin(), part.end());
    }
    EXPECT_EQ(got, expect);
    EXPECT_EQ(batched.unique_count(), streaming.unique_count());
  }
}

TEST(DedupTest, Properties) {
  const auto records = Planted(2000, 3);
  const auto once = Dedup(records);
  EXPECT_EQ(Dedup(once), once);
  std::set<std::string> texts;
  for (const auto& r : once) EXPECT_TRUE(texts.insert(r.text).second);
  Deduplicator d;
  for (const auto& r : records) d.Admit(r.text);
  EXPECT_EQ(d.unique_count(), once.size());
}

TEST(DedupTest, ParanoidCountsDigestHits) {
  Deduplicator d({DedupMode::kSingleSet, 1, true});
  EXPECT_TRUE(d.Admit("x"));
  EXPECT_FALSE(d.Admit("x"));
  EXPECT_FALSE(d.Admit("x"));
  EXPECT_EQ(d.collisions_checked(), 2u);
  EXPECT_EQ(d.true_collisions(), 0u);
  // Forcing two texts onto one digest is admitted and reported.
  EXPECT_TRUE(d.Admit(DigestOf("x"), "not x"));
  EXPECT_EQ(d.true_collisions(), 1u);
}

TEST(DedupModeTest, Names) {
  EXPECT_EQ(ParseDedupMode(DedupModeName(DedupMode::kSharded)), DedupMode::kSharded);
  EXPECT_EQ(ParseDedupMode(DedupModeName(DedupMode::kSingleSet)), DedupMode::kSingleSet);
  EXPECT_FALSE(ParseDedupMode("bogus"));
}

TEST(SampleTest, Examples) {
  const auto records = Planted(500, 4);
  EXPECT_EQ(Sample(records, 1.0, 7), records);
  EXPECT_TRUE(Sample(records, 0.0, 7).empty());
  EXPECT_EQ(Sample(records, 0.3, 7), Sample(records, 0.3, 7));
  EXPECT_NE(Sample(records, 0.3, 7), Sample(records, 0.3, 8));
}

TEST(SampleTest, SubsequenceAndShardInvariant) {
  std::vector<CleanRecord> records;
  for (int i = 0; i < 5000; ++i) records.push_back(Rec("r" + std::to_string(i)));
  const auto kept = Sample(records, 0.2, 11);
  // Subsequence.
  size_t j = 0;
  for (const auto& r : records) {
    if (j < kept.size() && kept[j] == r) ++j;
  }
  EXPECT_EQ(j, kept.size());
  // Per-shard sampling concatenates to the single-stream subset.
  std::vector<CleanRecord> merged;
  for (size_t start = 0; start < records.size(); start += 333) {
    const std::span<const CleanRecord> shard(
        records.data() + start, std::min<size_t>(333, records.size() - start));
    const auto part = Sample(shard, 0.2, 11);
    merged.insert(merged.end(), part.begin(), part.end());
  }
  EXPECT_EQ(merged, kept);
  // Binomial 3 sigma: n=5000, p=0.2 -> sd = sqrt(800) ~ 28.3.
  EXPECT_NEAR(static_cast<double>(kept.size()), 1000.0, 85.0);
}

TEST(SplitTest, Examples) {
  std::vector<CleanRecord> ten;
  for (int i = 0; i < 10; ++i) ten.push_back(Rec(std::to_string(i)));
  auto r = Split(ten, 0.8, 1);
  EXPECT_EQ(r.train.size(), 8u);
  EXPECT_EQ(r.dev.size(), 2u);
  r = Split(std::span(ten).first(5), 0.8, 1);
  EXPECT_EQ(r.train.size(), 4u);
  EXPECT_EQ(r.dev.size(), 1u);
  const auto a = Split(ten, 0.8, 3), b = Split(ten, 0.8, 3);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.dev, b.dev);
  EXPECT_THROW(Split(ten, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(Split(ten, 0.0, 1), std::invalid_argument);
}

TEST(SplitTest, DevCountRounding) {
  EXPECT_EQ(DevCount(5, 0.8), 1u);
  EXPECT_EQ(DevCount(10, 0.8), 2u);
  EXPECT_EQ(DevCount(1000, 0.8), 200u);
  EXPECT_EQ(DevCount(5, 0.9), 1u);  // 0.5 rounds up
  EXPECT_EQ(DevCount(0, 0.8), 0u);
  EXPECT_EQ(DevCount(1, 0.8), 0u);
  EXPECT_EQ(DevCount(3, 0.5), 2u);
}

TEST(SplitTest, PartitionProperties) {
  std::mt19937 rng(6);
  for (int round = 0; round < 200; ++round) {
    const size_t n = rng() % 300;
    const double f = 0.05 + 0.9 * (rng() % 1000) / 1000.0;
    std::vector<CleanRecord> records;
    for (size_t i = 0; i < n; ++i) records.push_back(Rec("t", std::to_string(i)));
    const auto r = Split(records, f, rng());
    ASSERT_EQ(r.dev.size(), DevCount(n, f));
    ASSERT_EQ(r.train.size() + r.dev.size(), n);
    // Both sides keep input order, so merging by id restores the input.
    std::vector<CleanRecord> merged;
    std::merge(r.train.begin(), r.train.end(), r.dev.begin(), r.dev.end(),
               std::back_inserter(merged), [](const CleanRecord& x, const CleanRecord& y) {
                 return std::stoul(x.id) < std::stoul(y.id);
               });
    ASSERT_EQ(merged, records);
  }
}

TEST(SplitTest, SelectorRejectsOverrun) {
  SplitSelector s(1, 0.5, 0);
  s.NextIsDev();
  EXPECT_THROW(s.NextIsDev(), std::logic_error);
}

TEST(StatsTest, Examples) {
  const std::vector<std::string> texts = {"ا ب", "ج"};
  const CorpusStats s = ComputeStats(texts);
  EXPECT_EQ(s.records, 2u);
  EXPECT_EQ(s.words, 3u);
  EXPECT_EQ(s.bytes, std::string("ا ب\nج\n").size());
  EXPECT_EQ(ComputeStats({}), CorpusStats{});
  EXPECT_EQ(CorpusStats{}.TotalDropped(), 0u);
}

TEST(StatsTest, AdditiveOverRandomShards) {
  std::mt19937 rng(10);
  std::vector<std::string> texts;
  for (int i = 0; i < 3000; ++i) {
    std::string t;
    const int words = static_cast<int>(rng() % 6);
    for (int w = 0; w < words; ++w) t += (w ? " " : "") + std::string(1 + rng() % 5, 'x');
    texts.push_back(t);
  }
  const CorpusStats whole = ComputeStats(texts);
  for (int round = 0; round < 20; ++round) {
    CorpusStats merged;
    size_t pos = 0;
    while (pos < texts.size()) {
      const size_t len = std::min<size_t>(texts.size() - pos, 1 + rng() % 400);
      CorpusStats part = ComputeStats(std::span(texts).subspan(pos, len));
      part.AddDrop("duplicate", len % 3);
      merged += part;
      pos += len;
    }
    EXPECT_EQ(merged.records, whole.records);
    EXPECT_EQ(merged.words, whole.words);
    EXPECT_EQ(merged.bytes, whole.bytes);
  }
}

TEST(StatsTest, JsonRoundTrip) {
  CorpusStats s = ComputeStats(std::vector<std::string>{"a b", "c"});
  s.AddDrop("duplicate", 4);
  s.AddDrop("too_few_words");
  EXPECT_EQ(s.TotalDropped(), 5u);
  EXPECT_EQ(CorpusStats::FromJson(s.ToJson()), s);
  EXPECT_EQ(CorpusStats{}.ToJson(),
            "{\n  \"bytes\": 0,\n  \"dropped_by_reason\": {},\n  \"records\": 0,\n"
            "  \"words\": 0\n}\n");
}

TEST(ManifestTest, Examples) {
  std::ostringstream out;
  WriteManifest(std::vector{Rec("x", "123"), Rec("y", "456")}, out);
  EXPECT_EQ(out.str(), "123\n456\n");
  std::ostringstream empty;
  WriteManifest(std::vector<CleanRecord>{}, empty);
  EXPECT_EQ(empty.str(), "");
  std::ostringstream bad;
  EXPECT_THROW(WriteManifestLine(Rec("x", "12a"), bad), std::invalid_argument);
  EXPECT_THROW(WriteManifestLine({"1", "x", Source::kForum}, bad), std::invalid_argument);
}

TEST(ManifestTest, LineCountEqualsRecordCount) {
  std::vector<CleanRecord> records;
  for (int i = 0; i < 321; ++i) records.push_back(Rec("t", std::to_string(1000 + i)));
  std::ostringstream out;
  WriteManifest(records, out);
  const std::string s = out.str();
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 321);
}

TEST(RngTest, BelowIsInRangeAndUnitInInterval) {
  SplitMixRng rng(1);
  for (int i = 0; i < 10000; ++i) {
    EXPECT_LT(rng.Below(7), 7u);
    const double u = rng.Unit();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  EXPECT_EQ(SplitMix64(0), SplitMix64(0));
}

}  // namespace
}  // namespace egycorpus
