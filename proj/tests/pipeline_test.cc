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

#include "egycorpus/pipeline.h"

#include <filesystem>

#include <gtest/gtest.h>

#include "egycorpus/corpus_io.h"
#include "test_util.h"

namespace egycorpus {
namespace {

using testing::Slurp;
using testing::SourcePath;
using testing::TempDir;

PipelineConfig Fixture(const std::string& name, const std::string& out, int workers) {
  PipelineConfig cfg = LoadConfig(SourcePath("tests/fixtures/" + name + ".yaml"));
  cfg.output_dir = out;
  cfg.workers = workers;
  cfg.Validate();
  return cfg;
}

void ExpectSameFile(const std::string& got, const std::string& want) {
  ASSERT_TRUE(std::filesystem::exists(got)) << got;
  EXPECT_TRUE(Slurp(got) == Slurp(want)) << got << " differs from " << want;
}

struct Variant {
  int workers;
  DedupMode mode;
};

class GoldenTest : public ::testing::TestWithParam<Variant> {};

TEST_P(GoldenTest, EtcMatchesGolden) {
  TempDir dir;
  PipelineConfig cfg = Fixture("etc", dir.Path(), GetParam().workers);
  cfg.dedup.mode = GetParam().mode;
  const CorpusStats stats = RunPipeline(cfg);
  const std::string golden = SourcePath("tests/golden/etc/");
  ExpectSameFile(dir.Path("corpus.txt"), golden + "corpus.txt");
  ExpectSameFile(dir.Path("corpus.txt.meta.tsv"), golden + "corpus.txt.meta.tsv");
  ExpectSameFile(dir.Path("manifest.txt"), golden + "manifest.txt");
  ExpectSameFile(dir.Path("stats.json"), golden + "stats.json");
  EXPECT_EQ(stats, CorpusStats::FromJson(Slurp(golden + "stats.json")));
}

TEST_P(GoldenTest, EfcMatchesGolden) {
  TempDir dir;
  PipelineConfig cfg = Fixture("efc", dir.Path(), GetParam().workers);
  cfg.dedup.mode = GetParam().mode;
  RunPipeline(cfg);
  const std::string golden = SourcePath("tests/golden/efc/");
  ExpectSameFile(dir.Path("raw.jsonl"), golden + "raw.jsonl");
  ExpectSameFile(dir.Path("corpus.txt"), golden + "corpus.txt");
  ExpectSameFile(dir.Path("corpus.txt.meta.tsv"), golden + "corpus.txt.meta.tsv");
  ExpectSameFile(dir.Path("stats.json"), golden + "stats.json");
  EXPECT_FALSE(std::filesystem::exists(dir.Path("manifest.txt")));
}

INSTANTIATE_TEST_SUITE_P(Workers, GoldenTest,
                         ::testing::Values(Variant{1, DedupMode::kSingleSet},
                                           Variant{8, DedupMode::kSingleSet},
                                           Variant{8, DedupMode::kSharded}));

std::vector<std::string> ListOutputs(const std::string& dir) {
  std::vector<std::string> names;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    names.push_back(e.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

TEST(PipelineTest, FullRunIsDeterministicAcrossWorkers) {
  TempDir a, b;
  for (auto [dir, workers] : {std::pair{&a, 1}, std::pair{&b, 8}}) {
    PipelineConfig cfg = Fixture("etc", dir->Path(), workers);
    cfg.sample_fraction = 0.7;
    cfg.split_enabled = true;
    cfg.vocab_path = SourcePath("data/sample_vocab.txt");
    RunPipeline(cfg);
  }
  const auto names = ListOutputs(a.Path());
  ASSERT_EQ(names, ListOutputs(b.Path()));
  for (const char* expected : {"sample.txt", "train.txt", "dev.txt", "mlm.bin",
                               "mlm.bin.summary.json", "stamp.json"}) {
    EXPECT_TRUE(std::count(names.begin(), names.end(), expected)) << expected;
  }
  for (const std::string& name : names) {
    EXPECT_TRUE(Slurp(a.Path(name)) == Slurp(b.Path(name))) << name;
  }
  EXPECT_EQ(CountLines(a.Path("train.txt")) + CountLines(a.Path("dev.txt")),
            CountLines(a.Path("sample.txt")));
}

TEST(PipelineTest, EqualsChainedStages) {
  TempDir piped, chained;
  PipelineConfig cfg = Fixture("etc", piped.Path(), 2);
  cfg.sample_fraction = 0.6;
  cfg.split_enabled = true;
  cfg.vocab_path = SourcePath("data/sample_vocab.txt");
  RunPipeline(cfg);

  const std::string d = chained.Path() + "/";
  IngestTweets(cfg.inputs, d + "raw.jsonl", cfg);
  CleanStage(d + "raw.jsonl", d + "cleaned.txt", cfg);
  DedupStage(d + "cleaned.txt", d + "corpus.txt", cfg);
  SampleStage(d + "corpus.txt", d + "sample.txt", cfg);
  ManifestStage(d + "sample.txt", d + "manifest.txt", cfg);
  SplitStage(d + "sample.txt", d + "train.txt", d + "dev.txt", cfg);
  MlmPrepStage(d + "train.txt", d + "mlm.bin", "", cfg);
  for (const char* name : {"raw.jsonl", "cleaned.txt", "corpus.txt", "sample.txt",
                           "sample.txt.meta.tsv", "manifest.txt", "train.txt", "dev.txt",
                           "mlm.bin"}) {
    ExpectSameFile(chained.Path(name), piped.Path(name));
  }
}

TEST(PipelineTest, StageReportsAndStamps) {
  TempDir dir;
  PipelineConfig cfg = Fixture("etc", dir.Path(), 1);
  const std::string out = dir.Path("corpus.txt");
  StageResult r = IngestTweets(cfg.inputs, dir.Path("raw.jsonl"), cfg);
  EXPECT_EQ(r.input_records, 204u);  // 205 lines less 1 blank one
  r = CleanStage(dir.Path("raw.jsonl"), out, cfg);
  WriteReports(out, "clean", r, cfg);
  EXPECT_EQ(CorpusStats::FromJson(Slurp(StatsReportPath(out))), r.stats);
  const std::string stamp = Slurp(StampPath(out));
  EXPECT_NE(stamp.find("\"stage\": \"clean\""), std::string::npos);
  EXPECT_NE(stamp.find(cfg.Digest()), std::string::npos);
  PipelineConfig other = cfg;
  other.workers = 8;
  other.output_dir = "/elsewhere";
  EXPECT_EQ(StampJson("clean", cfg), StampJson("clean", other));
}

TEST(PipelineTest, StatsStageMatchesCorpusStats) {
  TempDir dir;
  PipelineConfig cfg = Fixture("etc", dir.Path(), 1);
  const std::string golden = SourcePath("tests/golden/etc/corpus.txt");
  const StageResult r = StatsStage({golden}, cfg);
  const CorpusStats expect = CorpusStats::FromJson(Slurp(SourcePath("tests/golden/etc/stats.json")));
  EXPECT_EQ(r.stats.records, expect.records);
  EXPECT_EQ(r.stats.words, expect.words);
  EXPECT_EQ(r.stats.bytes, expect.bytes);
  testing::Spit(dir.Path("empty.txt"), "");
  EXPECT_EQ(StatsStage({dir.Path("empty.txt")}, cfg).stats, CorpusStats{});
}

TEST(PipelineTest, PresetRequired) {
  TempDir dir;
  PipelineConfig cfg = Fixture("etc", dir.Path(), 1);
  cfg.preset = Preset::kNone;
  EXPECT_THROW(RunPipeline(cfg), ConfigError);
}

}  // namespace
}  // namespace egycorpus
