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

#ifndef EGYCORPUS_CONFIG_H_
#define EGYCORPUS_CONFIG_H_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "egycorpus/corpus_io.h"
#include "egycorpus/corpus_ops.h"
#include "egycorpus/mlm_prep.h"
#include "egycorpus/record_clean.h"
#include "egycorpus/text_normalize.h"

namespace egycorpus {

// Invalid configuration. `field` is the dotted key ("sample.fraction"),
// `line` the 1-based line in the config file or 0 when not from a file.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, int line, const std::string& message);
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

enum class Preset { kNone, kEtc, kEfc };

struct PipelineConfig {
  Preset preset = Preset::kNone;

  std::vector<std::string> inputs;
  std::string input_format;  // tweets-jsonl | forum-html | raw-jsonl | corpus
  TweetFieldPaths tweet_fields;

  std::string terms_path;  // empty: built-in egypt-default list
  NormalizationProfile location_profile = NormalizationProfile::Location();
  std::string letter_map_path;  // empty: built-in table
  bool unify_ta_marbuta = false;

  CleanConfig clean;

  std::string fallback_encoding = "windows-1256";
  // Forum name (first directory below an input root) -> selectors. The key
  // "default" applies to forums without their own entry.
  std::map<std::string, std::vector<std::string>> forum_selectors;

  DedupOptions dedup;
  double sample_fraction = 1.0;
  uint64_t sample_seed = 13;
  bool split_enabled = false;
  double train_fraction = 0.8;
  uint64_t split_seed = 13;

  std::string vocab_path;
  size_t vocab_limit = kDefaultVocabLimit;
  MlmConfig mlm;

  std::string output_dir = "out";
  int workers = 1;

  // Source line of each field read from a config file, for diagnostics.
  std::map<std::string, int> field_lines;

  // Range and existence checks; throws ConfigError.
  void Validate() const;

  // Canonical JSON of every setting that can influence output bytes
  // (excludes workers and the output directory).
  std::string CanonicalJson() const;
  // Hex XXH3-128 of CanonicalJson().
  std::string Digest() const;
};

std::string_view PresetName(Preset preset);

// Parses YAML. Relative paths are resolved against `base_dir`. Unknown keys
// are errors. Throws ConfigError with the offending line.
PipelineConfig ParseConfig(std::string_view yaml, const std::string& base_dir = ".");
PipelineConfig LoadConfig(const std::string& path);

// Environment variable naming a default config file.
inline constexpr const char* kConfigEnvVar = "EGYCORPUS_CONFIG";

// Built-in copies of data/egypt_terms.txt and data/arabic_letter_map.tsv.
std::string_view DefaultTermListText();
std::string_view DefaultLetterMapText();

std::string_view ToolVersion();

}  // namespace egycorpus

#endif  // EGYCORPUS_CONFIG_H_
