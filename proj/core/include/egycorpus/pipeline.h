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

#ifndef EGYCORPUS_PIPELINE_H_
#define EGYCORPUS_PIPELINE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "egycorpus/config.h"
#include "egycorpus/corpus_ops.h"
#include "egycorpus/dialect_gate.h"

namespace egycorpus {

// Outcome of one stage: counters over the records it emitted plus the
// per-reason drops it recorded.
struct StageResult {
  CorpusStats stats;
  uint64_t input_records = 0;
};

// Location profile with the configured letter map applied.
NormalizationProfile EffectiveLocationProfile(const PipelineConfig& cfg);
TermList EffectiveTermList(const PipelineConfig& cfg);

// JSON-Lines tweet exports -> RawRecord JSON-Lines, gated on the location
// field. Drops: malformed_record, not_egyptian.
StageResult IngestTweets(const std::vector<std::string>& inputs, const std::string& output,
                         const PipelineConfig& cfg);

// Directory trees of saved pages -> RawRecord JSON-Lines, one record per
// extracted text block. Drops: undecodable_file.
StageResult IngestForums(const std::vector<std::string>& roots, const std::string& output,
                         const PipelineConfig& cfg);

// RawRecord JSON-Lines -> corpus file. Drops: malformed_record,
// too_few_words, majority_english.
StageResult CleanStage(const std::string& input, const std::string& output,
                       const PipelineConfig& cfg);

// Corpus -> corpus. Drops: duplicate.
StageResult DedupStage(const std::string& input, const std::string& output,
                       const PipelineConfig& cfg);

// Corpus -> corpus. Drops: sampled_out.
StageResult SampleStage(const std::string& input, const std::string& output,
                        const PipelineConfig& cfg);

// Corpus -> train and dev corpora. stats covers both outputs.
struct SplitStageResult {
  StageResult train;
  StageResult dev;
};
SplitStageResult SplitStage(const std::string& input, const std::string& train_output,
                            const std::string& dev_output, const PipelineConfig& cfg);

// Corpus (or RawRecord JSON-Lines when cfg.input_format is raw-jsonl) ->
// counters only.
StageResult StatsStage(const std::vector<std::string>& inputs, const PipelineConfig& cfg);

// Corpus -> one tweet id per line. Drops: not_tweet, invalid_id.
StageResult ManifestStage(const std::string& input, const std::string& output,
                          const PipelineConfig& cfg);

// Corpus -> binary MLM examples (plus a text rendering when debug_output is
// non-empty). Writes "<output>.summary.json" with example and masking
// counts.
StageResult MlmPrepStage(const std::string& input, const std::string& output,
                         const std::string& debug_output, const PipelineConfig& cfg);

// "<output>.stats.json" and "<output>.stamp.json".
std::string StatsReportPath(const std::string& output);
std::string StampPath(const std::string& output);
std::string StampJson(std::string_view stage, const PipelineConfig& cfg);
void WriteReports(const std::string& output, std::string_view stage, const StageResult& result,
                  const PipelineConfig& cfg);

// Runs the preset end to end inside cfg.output_dir:
//   raw.jsonl -> cleaned.txt -> corpus.txt [-> sample.txt]
//   [-> manifest.txt (tweets)] [-> train.txt / dev.txt] [-> mlm.bin]
// plus stats.json (final corpus counters and every drop) and stamp.json.
// The files are exactly what the stage subcommands produce when chained.
struct PipelineOutputs {
  std::string raw;
  std::string cleaned;
  std::string deduped;
  std::string final_corpus;
  std::string manifest;
  std::string train;
  std::string dev;
  std::string mlm;
  std::string stats;
  std::string stamp;
};
PipelineOutputs PipelineLayout(const PipelineConfig& cfg);
CorpusStats RunPipeline(const PipelineConfig& cfg);

}  // namespace egycorpus

#endif  // EGYCORPUS_PIPELINE_H_
