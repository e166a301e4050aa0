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

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "egycorpus/corpus_io.h"
#include "egycorpus/corpus_ops.h"
#include "test_util.h"

namespace egycorpus {
namespace {

using testing::Slurp;
using testing::SourcePath;
using testing::Spit;
using testing::TempDir;

struct RunResult {
  int status = -1;
  std::string out;
};

// Runs the tool through the shell; stderr is discarded.
RunResult Tool(const std::string& args, const std::string& env = "") {
  const std::string cmd = "env -u EGYCORPUS_CONFIG " + env + " '" EGYCORPUS_TOOL "' " + args +
                          " 2>/dev/null";
  RunResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string Quote(const std::string& s) { return "'" + s + "'"; }

const std::string kEtcConfig = SourcePath("tests/fixtures/etc.yaml");
const std::string kEfcConfig = SourcePath("tests/fixtures/efc.yaml");

TEST(CliTest, PipelineEtcMatchesGolden) {
  TempDir dir;
  ASSERT_EQ(Tool("-c " + Quote(kEtcConfig) + " pipeline --output-dir " + Quote(dir.Path()) +
                 " -j 4")
                .status,
            0);
  for (const char* f : {"corpus.txt", "corpus.txt.meta.tsv", "manifest.txt", "stats.json"}) {
    EXPECT_TRUE(Slurp(dir.Path(f)) == Slurp(SourcePath(std::string("tests/golden/etc/") + f)))
        << f;
  }
  EXPECT_TRUE(std::filesystem::exists(dir.Path("stamp.json")));
}

TEST(CliTest, ConfigFromEnvironment) {
  TempDir dir;
  const RunResult r = Tool("pipeline --output-dir " + Quote(dir.Path()),
                           "EGYCORPUS_CONFIG=" + Quote(kEfcConfig));
  ASSERT_EQ(r.status, 0);
  EXPECT_TRUE(Slurp(dir.Path("corpus.txt")) == Slurp(SourcePath("tests/golden/efc/corpus.txt")));
}

TEST(CliTest, PipelineEqualsChainedSubcommands) {
  TempDir piped, chained;
  const std::string common = "-c " + Quote(kEtcConfig) + " --fraction 0.5 --split -j 2 ";
  ASSERT_EQ(Tool(common + "pipeline --output-dir " + Quote(piped.Path())).status, 0);
  const std::string d = chained.Path() + "/";
  ASSERT_EQ(Tool(common + "ingest-tweets -o " + Quote(d + "raw.jsonl")).status, 0);
  ASSERT_EQ(Tool(common + "-i " + Quote(d + "raw.jsonl") + " --input-format raw-jsonl clean -o " +
                 Quote(d + "cleaned.txt"))
                .status,
            0);
  ASSERT_EQ(Tool(common + "-i " + Quote(d + "cleaned.txt") + " --input-format corpus dedup -o " +
                 Quote(d + "corpus.txt"))
                .status,
            0);
  ASSERT_EQ(Tool(common + "-i " + Quote(d + "corpus.txt") + " --input-format corpus sample -o " +
                 Quote(d + "sample.txt"))
                .status,
            0);
  ASSERT_EQ(Tool(common + "-i " + Quote(d + "sample.txt") +
                 " --input-format corpus manifest -o " + Quote(d + "manifest.txt"))
                .status,
            0);
  ASSERT_EQ(Tool(common + "-i " + Quote(d + "sample.txt") + " --input-format corpus split" +
                 " --train-output " + Quote(d + "train.txt") + " --dev-output " +
                 Quote(d + "dev.txt"))
                .status,
            0);
  for (const char* f : {"raw.jsonl", "cleaned.txt", "corpus.txt", "sample.txt", "manifest.txt",
                        "train.txt", "dev.txt", "train.txt.meta.tsv", "corpus.txt.stats.json",
                        "sample.txt.stats.json"}) {
    ASSERT_TRUE(std::filesystem::exists(chained.Path(f))) << f;
    EXPECT_TRUE(Slurp(chained.Path(f)) == Slurp(piped.Path(f))) << f;
  }
}

TEST(CliTest, RerunIsByteIdentical) {
  TempDir a, b;
  const std::string common = "-c " + Quote(kEfcConfig) + " --fraction 0.8 pipeline";
  ASSERT_EQ(Tool(common + " -j 1 --output-dir " + Quote(a.Path())).status, 0);
  ASSERT_EQ(Tool(common + " -j 8 --output-dir " + Quote(b.Path())).status, 0);
  for (const auto& e : std::filesystem::directory_iterator(a.Path())) {
    const std::string name = e.path().filename().string();
    EXPECT_TRUE(Slurp(a.Path(name)) == Slurp(b.Path(name))) << name;
  }
}

TEST(CliTest, StatsOnEmptyInput) {
  TempDir dir;
  Spit(dir.Path("empty.txt"), "");
  const RunResult r = Tool("-i " + Quote(dir.Path("empty.txt")) + " stats -o " +
                           Quote(dir.Path("report.json")));
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out, CorpusStats{}.ToJson());
  EXPECT_EQ(Slurp(dir.Path("report.json")), CorpusStats{}.ToJson());
  EXPECT_TRUE(std::filesystem::exists(dir.Path("report.json.stamp.json")));
}

TEST(CliTest, SampleFractionOneIsIdentity) {
  TempDir dir;
  const std::string in = SourcePath("tests/golden/etc/corpus.txt");
  ASSERT_EQ(Tool("-i " + Quote(in) + " sample --fraction 1.0 -o " + Quote(dir.Path("s.txt")))
                .status,
            0);
  EXPECT_EQ(Slurp(dir.Path("s.txt")), Slurp(in));
  EXPECT_EQ(Slurp(dir.Path("s.txt.meta.tsv")), Slurp(in + ".meta.tsv"));
  const CorpusStats s = CorpusStats::FromJson(Slurp(dir.Path("s.txt.stats.json")));
  EXPECT_EQ(s.records, 95u);
  EXPECT_EQ(s.TotalDropped(), 0u);
}

TEST(CliTest, MlmPrepWritesExamples) {
  TempDir dir;
  const std::string in = SourcePath("tests/golden/etc/corpus.txt");
  ASSERT_EQ(Tool("-i " + Quote(in) + " --vocab " + Quote(SourcePath("data/sample_vocab.txt")) +
                 " mlm-prep -o " + Quote(dir.Path("m.bin")) + " --debug-output " +
                 Quote(dir.Path("m.txt")))
                .status,
            0);
  EXPECT_GT(std::filesystem::file_size(dir.Path("m.bin")), 0u);
  EXPECT_GE(CountLines(dir.Path("m.txt")), 95u);
  EXPECT_TRUE(std::filesystem::exists(dir.Path("m.bin.summary.json")));
}

TEST(CliTest, ConfigErrorsExitTwo) {
  TempDir dir;
  Spit(dir.Path("bad.yaml"), "preset: etc\nclean:\n  min_word: 3\n");
  EXPECT_EQ(Tool("-c " + Quote(dir.Path("bad.yaml")) + " pipeline").status, 2);
  EXPECT_EQ(Tool("-c " + Quote(kEtcConfig) + " --fraction 2 pipeline").status, 2);
  EXPECT_EQ(Tool("-c " + Quote(dir.Path("missing.yaml")) + " pipeline").status, 2);
  EXPECT_EQ(Tool("-i " + Quote(dir.Path("nope.txt")) + " stats").status, 2);
  EXPECT_EQ(Tool("--no-such-flag stats").status, 2);
  EXPECT_EQ(Tool("").status, 2);
  EXPECT_EQ(Tool("-c " + Quote(kEtcConfig) + " --dedup-mode fuzzy pipeline").status, 2);
  EXPECT_EQ(Tool("-i " + Quote(SourcePath("tests/golden/etc/corpus.txt")) + " mlm-prep").status,
            2);
}

TEST(CliTest, IoErrorsExitThree) {
  TempDir dir;
  const std::string in = SourcePath("tests/golden/etc/corpus.txt");
  Spit(dir.Path("c.txt"), "a b c\n");
  EXPECT_EQ(Tool("-i " + Quote(in) + " dedup -o " + Quote(dir.Path("c.txt/out.txt"))).status, 3);
  Spit(dir.Path("c.txt.meta.tsv"), "garbage\n");
  EXPECT_EQ(Tool("-i " + Quote(dir.Path("c.txt")) + " dedup -o " + Quote(dir.Path("o.txt")))
                .status,
            3);
}

TEST(CliTest, VersionAndHelp) {
  const RunResult v = Tool("--version");
  EXPECT_EQ(v.status, 0);
  EXPECT_FALSE(v.out.empty());
  EXPECT_EQ(Tool("--help").status, 0);
}

}  // namespace
}  // namespace egycorpus
