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

#include "egycorpus/config.h"

#include <gtest/gtest.h>

#include "test_util.h"

namespace egycorpus {
namespace {

using testing::SourcePath;

// Returns the ConfigError raised by parsing and validating `yaml`.
ConfigError ErrorOf(const std::string& yaml) {
  try {
    ParseConfig(yaml, SourcePath("tests/fixtures")).Validate();
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "no ConfigError for:\n" << yaml;
  return ConfigError("", 0, "");
}

TEST(ConfigTest, EmptyDocumentGivesDefaults) {
  const PipelineConfig cfg = ParseConfig("");
  EXPECT_EQ(cfg.preset, Preset::kNone);
  EXPECT_EQ(cfg.workers, 1);
  EXPECT_EQ(cfg.sample_fraction, 1.0);
  EXPECT_EQ(cfg.train_fraction, 0.8);
  EXPECT_EQ(cfg.mlm.max_seq_len, 128u);
  EXPECT_EQ(cfg.mlm.mask_rate, 0.15);
  EXPECT_EQ(cfg.vocab_limit, 75000u);
  EXPECT_EQ(cfg.clean.min_words, 3);
  EXPECT_NO_THROW(cfg.Validate());
}

TEST(ConfigTest, FixtureConfigsLoad) {
  const PipelineConfig etc = LoadConfig(SourcePath("tests/fixtures/etc.yaml"));
  EXPECT_EQ(etc.preset, Preset::kEtc);
  ASSERT_EQ(etc.inputs.size(), 1u);
  EXPECT_EQ(etc.inputs[0], SourcePath("tests/fixtures/etc/tweets.jsonl"));
  EXPECT_EQ(etc.terms_path, SourcePath("data/egypt_terms.txt"));
  EXPECT_NO_THROW(etc.Validate());

  const PipelineConfig efc = LoadConfig(SourcePath("tests/fixtures/efc.yaml"));
  EXPECT_EQ(efc.preset, Preset::kEfc);
  EXPECT_EQ(efc.forum_selectors.at("almatareed"),
            (std::vector<std::string>{"blockquote.postcontent", "div.signature"}));
  EXPECT_FALSE(efc.forum_selectors.count("banatmasr"));
  EXPECT_NO_THROW(efc.Validate());
}

TEST(ConfigTest, ShippedExamplesLoad) {
  for (const char* name : {"data/etc.example.yaml", "data/efc.example.yaml"}) {
    EXPECT_NO_THROW(LoadConfig(SourcePath(name))) << name;
  }
}

TEST(ConfigTest, FullDocumentParses) {
  const PipelineConfig cfg = ParseConfig(R"(
preset: efc
workers: 4
input: {paths: [a, b], format: raw-jsonl, tweet_fields: {id: id_str, text: full_text, location: place.name}}
normalization: {strip_emoji: false, collapse_letter_runs: null, emoji_allowlist: ["🇪🇬"], unify_ta_marbuta: true}
clean: {max_letter_run: 6, max_other_run: 3, max_digit_run_kept: 5, min_words: 2, english_majority_threshold: 0.7, keep_hashtag_body: true}
forums: {fallback_encoding: iso-8859-6, selectors: {default: "div.post"}}
dedup: {mode: sharded, shards: 16, paranoid: true}
sample: {fraction: 0.2, seed: 5}
split: {enabled: true, train_fraction: 0.9, seed: 6}
mlm: {vocab_limit: 1000, max_seq_len: 64, mask_rate: 0.2, mask_token_prob: 0.6, random_token_prob: 0.2, keep_token_prob: 0.2, seed: 7}
output: {dir: out}
)",
                                         "/base");
  EXPECT_EQ(cfg.workers, 4);
  EXPECT_EQ(cfg.inputs, (std::vector<std::string>{"/base/a", "/base/b"}));
  EXPECT_EQ(cfg.input_format, "raw-jsonl");
  EXPECT_EQ(cfg.tweet_fields.location, "place.name");
  EXPECT_FALSE(cfg.location_profile.strip_emoji);
  EXPECT_FALSE(cfg.location_profile.collapse_letter_runs);
  EXPECT_EQ(cfg.location_profile.emoji_allowlist, std::vector<std::string>{"🇪🇬"});
  EXPECT_TRUE(cfg.unify_ta_marbuta);
  EXPECT_EQ(cfg.clean.max_digit_run_kept, 5);
  EXPECT_TRUE(cfg.clean.keep_hashtag_body);
  EXPECT_EQ(cfg.fallback_encoding, "iso-8859-6");
  EXPECT_EQ(cfg.forum_selectors.at("default"), std::vector<std::string>{"div.post"});
  EXPECT_EQ(cfg.dedup.mode, DedupMode::kSharded);
  EXPECT_EQ(cfg.dedup.shards, 16);
  EXPECT_TRUE(cfg.dedup.paranoid);
  EXPECT_EQ(cfg.sample_fraction, 0.2);
  EXPECT_TRUE(cfg.split_enabled);
  EXPECT_EQ(cfg.split_seed, 6u);
  EXPECT_EQ(cfg.mlm.max_seq_len, 64u);
  EXPECT_EQ(cfg.mlm.seed, 7u);
  EXPECT_EQ(cfg.output_dir, "/base/out");
}

TEST(ConfigErrorTest, UnknownKeysReportLineAndField) {
  ConfigError e = ErrorOf("preset: etc\nclean:\n  min_words: 3\n  max_runs: 2\n");
  EXPECT_EQ(e.field(), "clean.max_runs");
  EXPECT_EQ(e.line(), 4);
  EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);

  e = ErrorOf("bogus: 1\n");
  EXPECT_EQ(e.field(), "bogus");
  EXPECT_EQ(e.line(), 1);
}

TEST(ConfigErrorTest, TypeErrorsReportLine) {
  ConfigError e = ErrorOf("\n\nworkers: many\n");
  EXPECT_EQ(e.field(), "workers");
  EXPECT_EQ(e.line(), 3);
  e = ErrorOf("preset: xyz\n");
  EXPECT_EQ(e.field(), "preset");
  e = ErrorOf("dedup:\n  mode: fuzzy\n");
  EXPECT_EQ(e.field(), "dedup.mode");
  EXPECT_EQ(e.line(), 2);
  e = ErrorOf("forums:\n  selectors:\n    x: \"div >\"\n");
  EXPECT_EQ(e.field(), "forums.selectors.x");
  e = ErrorOf("key: [unclosed\n");
  EXPECT_EQ(e.field(), "");
  EXPECT_GT(e.line(), 0);
}

TEST(ConfigErrorTest, RangeErrorsReportLineAndField) {
  struct Case {
    const char* yaml;
    const char* field;
    int line;
  };
  const Case cases[] = {
      {"sample:\n  fraction: 1.5\n", "sample.fraction", 2},
      {"sample:\n  fraction: -0.1\n", "sample.fraction", 2},
      {"split:\n  train_fraction: 1.0\n", "split.train_fraction", 2},
      {"workers: 0\n", "workers", 1},
      {"clean:\n  min_words: 0\n", "clean.min_words", 2},
      {"clean:\n  english_majority_threshold: 0\n", "clean.english_majority_threshold", 2},
      {"dedup:\n  shards: 0\n", "dedup.shards", 2},
      {"mlm:\n  max_seq_len: 2\n", "mlm.max_seq_len", 2},
      {"mlm:\n  mask_rate: 1.0\n", "mlm.mask_rate", 2},
      {"mlm:\n  mask_token_prob: 0.5\n", "mlm", 0},
      {"mlm:\n  vocab_limit: 3\n", "mlm.vocab_limit", 2},
      {"input:\n  format: csv\n", "input.format", 2},
      {"input:\n  paths: [no/such/file]\n", "input.paths", 2},
      {"terms: missing.txt\n", "terms", 1},
      {"mlm:\n  vocab: nope.txt\n", "mlm.vocab", 2},
      {"normalization:\n  collapse_letter_runs: 0\n", "normalization.collapse_letter_runs", 2},
  };
  for (const Case& c : cases) {
    const ConfigError e = ErrorOf(c.yaml);
    EXPECT_EQ(e.field(), c.field) << c.yaml;
    EXPECT_EQ(e.line(), c.line) << c.yaml;
  }
}

TEST(ConfigTest, MissingFileIsConfigError) {
  EXPECT_THROW(LoadConfig("/nonexistent/config.yaml"), ConfigError);
}

TEST(ConfigTest, DigestIgnoresWorkersAndOutputDir) {
  PipelineConfig a = ParseConfig("preset: etc\n");
  PipelineConfig b = a;
  b.workers = 8;
  b.output_dir = "/elsewhere";
  EXPECT_EQ(a.Digest(), b.Digest());
  b.sample_seed = 99;
  EXPECT_NE(a.Digest(), b.Digest());
  b = a;
  b.clean.min_words = 4;
  EXPECT_NE(a.Digest(), b.Digest());
  EXPECT_EQ(a.Digest().size(), 32u);
}

TEST(ConfigTest, EmbeddedDefaultsMatchShippedData) {
  EXPECT_EQ(DefaultTermListText(), testing::Slurp(SourcePath("data/egypt_terms.txt")));
  EXPECT_EQ(DefaultLetterMapText(), testing::Slurp(SourcePath("data/arabic_letter_map.tsv")));
  EXPECT_FALSE(ToolVersion().empty());
}

}  // namespace
}  // namespace egycorpus
