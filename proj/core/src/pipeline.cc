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
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "egycorpus/corpus_io.h"
#include "egycorpus/html_extract.h"
#include "egycorpus/mlm_prep.h"
#include "egycorpus/parallel.h"
#include "egycorpus/record_clean.h"

namespace egycorpus {

namespace fs = std::filesystem;

namespace {

constexpr size_t kBatchRecords = 2048;
constexpr size_t kBatchFiles = 8;

size_t QueueCapacity(const PipelineConfig& cfg) {
  return static_cast<size_t>(cfg.workers) * 2 + 2;
}

void EnsureParent(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (parent.empty()) return;
  std::error_code ec;
  fs::create_directories(parent, ec);
  if (ec) throw IoError("cannot create directory " + parent.string() + ": " + ec.message());
}

std::ofstream OpenOutput(const std::string& path) {
  EnsureParent(path);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

void CloseOutput(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw IoError("write failed: " + path);
}

// Reads consecutive lines from a list of files.
class LineSource {
 public:
  explicit LineSource(std::vector<std::string> paths) : paths_(std::move(paths)) {}

  std::optional<std::vector<std::string>> Next(size_t max_lines) {
    std::vector<std::string> lines;
    std::string line;
    while (lines.size() < max_lines) {
      if (!in_.is_open()) {
        if (next_ >= paths_.size()) break;
        in_.open(paths_[next_], std::ios::binary);
        if (!in_) throw IoError("cannot open " + paths_[next_]);
        ++next_;
      }
      if (std::getline(in_, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
      } else {
        if (in_.bad()) throw IoError("read failed: " + paths_[next_ - 1]);
        in_.close();
        in_.clear();
      }
    }
    if (lines.empty()) return std::nullopt;
    return lines;
  }

 private:
  std::vector<std::string> paths_;
  size_t next_ = 0;
  std::ifstream in_;
};

std::function<std::optional<std::vector<CleanRecord>>()> CorpusBatches(CorpusReader& reader) {
  return [&reader]() -> std::optional<std::vector<CleanRecord>> {
    std::vector<CleanRecord> batch;
    CleanRecord rec;
    while (batch.size() < kBatchRecords && reader.Next(&rec)) batch.push_back(std::move(rec));
    if (batch.empty()) return std::nullopt;
    return batch;
  };
}

struct TextChunk {
  std::string text;
  CorpusStats stats;
  uint64_t inputs = 0;
};

struct RecordChunk {
  std::vector<CleanRecord> records;
  CorpusStats stats;
};

// Runs `transform` over batches of corpus records and writes the kept ones.
StageResult FilterCorpus(const std::string& input, const std::string& output,
                         const PipelineConfig& cfg,
                         const std::function<RecordChunk(std::vector<CleanRecord>&)>& transform,
                         const std::function<void(RecordChunk&)>& before_write = {}) {
  CorpusReader reader(input);
  EnsureParent(output);
  CorpusWriter writer(output);
  StageResult result;
  RunOrderedPipeline<std::vector<CleanRecord>, RecordChunk>(
      cfg.workers, QueueCapacity(cfg), CorpusBatches(reader), transform,
      [&](RecordChunk& chunk) {
        if (before_write) before_write(chunk);
        for (const CleanRecord& r : chunk.records) {
          writer.Write(r);
          result.stats.Add(r.text);
        }
        result.stats += chunk.stats;
      });
  writer.Close();
  result.input_records = reader.lines();
  return result;
}

}  // namespace

NormalizationProfile EffectiveLocationProfile(const PipelineConfig& cfg) {
  NormalizationProfile profile = cfg.location_profile;
  LetterMap map;
  try {
    map = cfg.letter_map_path.empty() ? LetterMap::Parse(DefaultLetterMapText())
                                      : LetterMap::Load(cfg.letter_map_path);
  } catch (const std::runtime_error& e) {
    throw ConfigError("normalization.letter_map", 0, e.what());
  }
  profile.letter_map = cfg.unify_ta_marbuta ? map.WithTaMarbuta() : map;
  return profile;
}

TermList EffectiveTermList(const PipelineConfig& cfg) {
  const NormalizationProfile profile = EffectiveLocationProfile(cfg);
  if (cfg.terms_path.empty()) return TermList::Parse("egypt-default", DefaultTermListText(), profile);
  return TermList::Load(cfg.terms_path, profile);
}

StageResult IngestTweets(const std::vector<std::string>& inputs, const std::string& output,
                         const PipelineConfig& cfg) {
  const NormalizationProfile profile = EffectiveLocationProfile(cfg);
  const TermList terms = EffectiveTermList(cfg);
  LineSource lines(inputs);
  std::ofstream out = OpenOutput(output);
  StageResult result;
  RunOrderedPipeline<std::vector<std::string>, TextChunk>(
      cfg.workers, QueueCapacity(cfg), [&] { return lines.Next(kBatchRecords); },
      [&](std::vector<std::string>& batch) {
        TextChunk chunk;
        std::string error;
        for (const std::string& line : batch) {
          if (line.find_first_not_of(" \t") == std::string::npos) continue;
          ++chunk.inputs;
          std::optional<RawRecord> rec = ParseTweetLine(line, cfg.tweet_fields, &error);
          if (!rec) {
            chunk.stats.AddDrop("malformed_record");
          } else if (!rec->location || !MatchLocation(*rec->location, terms, profile)) {
            chunk.stats.AddDrop("not_egyptian");
          } else {
            chunk.text += RawRecordToJsonLine(*rec);
            chunk.text += '\n';
            chunk.stats.Add(rec->text);
          }
        }
        return chunk;
      },
      [&](TextChunk& chunk) {
        out << chunk.text;
        result.stats += chunk.stats;
        result.input_records += chunk.inputs;
      });
  CloseOutput(out, output);
  return result;
}

StageResult IngestForums(const std::vector<std::string>& roots, const std::string& output,
                         const PipelineConfig& cfg) {
  struct PageRef {
    std::string path;
    std::string id;
    const std::vector<Selector>* selectors;
  };
  std::map<std::string, std::vector<Selector>> selectors;
  for (const auto& [name, items] : cfg.forum_selectors) {
    try {
      selectors[name] = ParseSelectorList(items);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("forums.selectors." + name, 0, e.what());
    }
  }
  static const std::vector<Selector> kNoSelectors;
  auto selectors_for = [&](const std::string& forum) -> const std::vector<Selector>* {
    if (auto it = selectors.find(forum); it != selectors.end()) return &it->second;
    if (auto it = selectors.find("default"); it != selectors.end()) return &it->second;
    return &kNoSelectors;
  };

  std::vector<PageRef> pages;
  for (const std::string& root : roots) {
    if (!fs::is_directory(root)) throw IoError("not a directory: " + root);
    const std::string root_name = fs::path(root).lexically_normal().filename().string();
    for (const std::string& file : ListHtmlFiles(root)) {
      const fs::path rel = fs::path(file).lexically_relative(root);
      const std::string forum =
          std::distance(rel.begin(), rel.end()) > 1 ? rel.begin()->string() : root_name;
      pages.push_back({file, rel.generic_string(), selectors_for(forum)});
    }
  }

  size_t next = 0;
  std::ofstream out = OpenOutput(output);
  StageResult result;
  RunOrderedPipeline<std::vector<PageRef>, TextChunk>(
      cfg.workers, QueueCapacity(cfg),
      [&]() -> std::optional<std::vector<PageRef>> {
        if (next >= pages.size()) return std::nullopt;
        const size_t end = std::min(pages.size(), next + kBatchFiles);
        std::vector<PageRef> batch(pages.begin() + next, pages.begin() + end);
        next = end;
        return batch;
      },
      [&](std::vector<PageRef>& batch) {
        TextChunk chunk;
        for (const PageRef& ref : batch) {
          ++chunk.inputs;
          std::vector<std::string> blocks;
          try {
            blocks = ExtractText(ReadHtmlPage(ref.path), *ref.selectors, cfg.fallback_encoding);
          } catch (const UndecodableFile&) {
            chunk.stats.AddDrop("undecodable_file");
            continue;
          }
          for (size_t i = 0; i < blocks.size(); ++i) {
            RawRecord rec;
            rec.id = ref.id + "#" + std::to_string(i + 1);
            rec.source = Source::kForum;
            rec.text = std::move(blocks[i]);
            chunk.text += RawRecordToJsonLine(rec);
            chunk.text += '\n';
            chunk.stats.Add(rec.text);
          }
        }
        return chunk;
      },
      [&](TextChunk& chunk) {
        out << chunk.text;
        result.stats += chunk.stats;
        result.input_records += chunk.inputs;
      });
  CloseOutput(out, output);
  return result;
}

StageResult CleanStage(const std::string& input, const std::string& output,
                       const PipelineConfig& cfg) {
  LineSource lines({input});
  EnsureParent(output);
  CorpusWriter writer(output);
  StageResult result;
  RunOrderedPipeline<std::vector<std::string>, RecordChunk>(
      cfg.workers, QueueCapacity(cfg), [&] { return lines.Next(kBatchRecords); },
      [&](std::vector<std::string>& batch) {
        RecordChunk chunk;
        for (const std::string& line : batch) {
          if (line.empty()) continue;
          RawRecord raw;
          try {
            raw = RawRecordFromJsonLine(line);
          } catch (const std::invalid_argument&) {
            chunk.stats.AddDrop("malformed_record");
            continue;
          }
          DropReason reason = DropReason::kNone;
          std::optional<CleanRecord> rec = CleanBySource(raw, cfg.clean, &reason);
          if (!rec) {
            chunk.stats.AddDrop(DropReasonName(reason));
          } else if (!ValidateCleanRecord(*rec, cfg.clean).empty()) {
            chunk.stats.AddDrop("malformed_record");
          } else {
            chunk.records.push_back(std::move(*rec));
          }
        }
        return chunk;
      },
      [&](RecordChunk& chunk) {
        for (const CleanRecord& r : chunk.records) {
          writer.Write(r);
          result.stats.Add(r.text);
        }
        result.stats += chunk.stats;
        result.input_records += chunk.records.size() + chunk.stats.TotalDropped();
      });
  writer.Close();
  return result;
}

StageResult DedupStage(const std::string& input, const std::string& output,
                       const PipelineConfig& cfg) {
  Deduplicator dedup(cfg.dedup);
  struct Hashed {
    std::vector<CleanRecord> records;
    std::vector<Digest> digests;
  };
  // Digests are computed by the workers; admission runs in input order on
  // the sink, which keeps first occurrences regardless of worker count.
  CorpusReader reader(input);
  EnsureParent(output);
  CorpusWriter writer(output);
  StageResult result;
  RunOrderedPipeline<std::vector<CleanRecord>, Hashed>(
      cfg.workers, QueueCapacity(cfg), CorpusBatches(reader),
      [](std::vector<CleanRecord>& batch) {
        Hashed h;
        h.digests.reserve(batch.size());
        for (const CleanRecord& r : batch) h.digests.push_back(DigestOf(r.text));
        h.records = std::move(batch);
        return h;
      },
      [&](Hashed& h) {
        std::vector<std::string_view> texts;
        texts.reserve(h.records.size());
        for (const CleanRecord& r : h.records) texts.push_back(r.text);
        const std::vector<bool> keep = dedup.AdmitBatch(h.digests, texts);
        for (size_t i = 0; i < h.records.size(); ++i) {
          if (keep[i]) {
            writer.Write(h.records[i]);
            result.stats.Add(h.records[i].text);
          } else {
            result.stats.AddDrop("duplicate");
          }
        }
      });
  writer.Close();
  result.input_records = reader.lines();
  return result;
}

StageResult SampleStage(const std::string& input, const std::string& output,
                        const PipelineConfig& cfg) {
  return FilterCorpus(input, output, cfg, [&](std::vector<CleanRecord>& batch) {
    RecordChunk chunk;
    for (CleanRecord& r : batch) {
      if (SampleKeep(DigestOf(r.text), cfg.sample_fraction, cfg.sample_seed)) {
        chunk.records.push_back(std::move(r));
      } else {
        chunk.stats.AddDrop("sampled_out");
      }
    }
    return chunk;
  });
}

SplitStageResult SplitStage(const std::string& input, const std::string& train_output,
                            const std::string& dev_output, const PipelineConfig& cfg) {
  const uint64_t n = CountLines(input);
  SplitSelector selector(n, cfg.train_fraction, cfg.split_seed);
  CorpusReader reader(input);
  EnsureParent(train_output);
  EnsureParent(dev_output);
  CorpusWriter train(train_output);
  CorpusWriter dev(dev_output);
  SplitStageResult result;
  CleanRecord rec;
  while (reader.Next(&rec)) {
    if (selector.NextIsDev()) {
      dev.Write(rec);
      result.dev.stats.Add(rec.text);
    } else {
      train.Write(rec);
      result.train.stats.Add(rec.text);
    }
  }
  if (reader.lines() != n) throw IoError("input changed while splitting: " + input);
  train.Close();
  dev.Close();
  result.train.input_records = result.dev.input_records = n;
  return result;
}

StageResult StatsStage(const std::vector<std::string>& inputs, const PipelineConfig& cfg) {
  const bool raw = cfg.input_format == "raw-jsonl";
  StageResult result;
  for (const std::string& path : inputs) {
    LineSource lines({path});
    RunOrderedPipeline<std::vector<std::string>, CorpusStats>(
        cfg.workers, QueueCapacity(cfg), [&] { return lines.Next(kBatchRecords); },
        [&](std::vector<std::string>& batch) {
          CorpusStats s;
          for (const std::string& line : batch) {
            if (!raw) {
              s.Add(line);
              continue;
            }
            if (line.empty()) continue;
            try {
              s.Add(RawRecordFromJsonLine(line).text);
            } catch (const std::invalid_argument&) {
              s.AddDrop("malformed_record");
            }
          }
          return s;
        },
        [&](CorpusStats& s) { result.stats += s; });
  }
  result.input_records = result.stats.records + result.stats.TotalDropped();
  return result;
}

StageResult ManifestStage(const std::string& input, const std::string& output,
                          const PipelineConfig& cfg) {
  (void)cfg;
  CorpusReader reader(input);
  std::ofstream out = OpenOutput(output);
  StageResult result;
  CleanRecord rec;
  while (reader.Next(&rec)) {
    if (rec.source != Source::kTweet) {
      result.stats.AddDrop("not_tweet");
    } else if (!IsDecimalId(rec.id)) {
      result.stats.AddDrop("invalid_id");
    } else {
      WriteManifestLine(rec, out);
      result.stats.Add(rec.text);
    }
  }
  CloseOutput(out, output);
  result.input_records = reader.lines();
  return result;
}

StageResult MlmPrepStage(const std::string& input, const std::string& output,
                         const std::string& debug_output, const PipelineConfig& cfg) {
  if (cfg.vocab_path.empty()) throw ConfigError("mlm.vocab", 0, "a vocabulary file is required");
  Vocab vocab;
  try {
    vocab = Vocab::Load(cfg.vocab_path, cfg.vocab_limit);
  } catch (const VocabError& e) {
    throw ConfigError("mlm.vocab", 0, e.what());
  }
  struct Examples {
    std::string binary;
    std::string debug;
    CorpusStats stats;
    uint64_t examples = 0, tokens = 0, labels = 0, masked = 0, random = 0, kept = 0;
  };
  const TokenId mask_id = vocab.specials().mask;
  const bool want_debug = !debug_output.empty();

  CorpusReader reader(input);
  std::ofstream out = OpenOutput(output);
  std::ofstream debug;
  if (want_debug) debug = OpenOutput(debug_output);
  StageResult result;
  Examples total;
  RunOrderedPipeline<std::vector<CleanRecord>, Examples>(
      cfg.workers, QueueCapacity(cfg), CorpusBatches(reader),
      [&](std::vector<CleanRecord>& batch) {
        Examples ex;
        std::ostringstream bin;
        for (const CleanRecord& r : batch) {
          ex.stats.Add(r.text);
          for (const auto& ids : EncodeChunks(r.text, vocab, cfg.mlm.max_seq_len)) {
            const MlmExample e = MaskExample(ids, cfg.mlm, vocab);
            WriteExampleBinary(e, bin);
            if (want_debug) {
              ex.debug += ExampleDebugLine(e);
              ex.debug += '\n';
            }
            ++ex.examples;
            ex.tokens += e.attention_length;
            ex.labels += e.label_positions.size();
            for (size_t i = 0; i < e.label_positions.size(); ++i) {
              const TokenId now = e.input_ids[e.label_positions[i]];
              if (now == mask_id) {
                ++ex.masked;
              } else if (now == e.label_ids[i]) {
                ++ex.kept;
              } else {
                ++ex.random;
              }
            }
          }
        }
        ex.binary = std::move(bin).str();
        return ex;
      },
      [&](Examples& ex) {
        out << ex.binary;
        if (want_debug) debug << ex.debug;
        result.stats += ex.stats;
        total.examples += ex.examples;
        total.tokens += ex.tokens;
        total.labels += ex.labels;
        total.masked += ex.masked;
        total.random += ex.random;
        total.kept += ex.kept;
      });
  CloseOutput(out, output);
  if (want_debug) CloseOutput(debug, debug_output);
  result.input_records = reader.lines();

  nlohmann::json summary = {{"examples", total.examples},
                            {"tokens", total.tokens},
                            {"labels", total.labels},
                            {"replaced_with_mask", total.masked},
                            {"replaced_with_random", total.random},
                            {"kept_original", total.kept},
                            {"vocab_size", vocab.size()},
                            {"max_seq_len", cfg.mlm.max_seq_len}};
  WriteFile(output + ".summary.json", summary.dump(2) + "\n");
  return result;
}

std::string StatsReportPath(const std::string& output) { return output + ".stats.json"; }
std::string StampPath(const std::string& output) { return output + ".stamp.json"; }

std::string StampJson(std::string_view stage, const PipelineConfig& cfg) {
  nlohmann::json j = {{"tool", "egycorpus"},
                      {"version", std::string(ToolVersion())},
                      {"stage", std::string(stage)},
                      {"preset", std::string(PresetName(cfg.preset))},
                      {"config_digest", cfg.Digest()},
                      {"seeds",
                       {{"sample", cfg.sample_seed},
                        {"split", cfg.split_seed},
                        {"mlm", cfg.mlm.seed}}}};
  return j.dump(2) + "\n";
}

void WriteReports(const std::string& output, std::string_view stage, const StageResult& result,
                  const PipelineConfig& cfg) {
  WriteFile(StatsReportPath(output), result.stats.ToJson());
  WriteFile(StampPath(output), StampJson(stage, cfg));
}

PipelineOutputs PipelineLayout(const PipelineConfig& cfg) {
  const fs::path dir(cfg.output_dir);
  auto at = [&](const char* name) { return (dir / name).string(); };
  PipelineOutputs o;
  o.raw = at("raw.jsonl");
  o.cleaned = at("cleaned.txt");
  o.deduped = at("corpus.txt");
  o.final_corpus = cfg.sample_fraction < 1.0 ? at("sample.txt") : o.deduped;
  if (cfg.preset == Preset::kEtc) o.manifest = at("manifest.txt");
  if (cfg.split_enabled) {
    o.train = at("train.txt");
    o.dev = at("dev.txt");
  }
  if (!cfg.vocab_path.empty()) o.mlm = at("mlm.bin");
  o.stats = at("stats.json");
  o.stamp = at("stamp.json");
  return o;
}

CorpusStats RunPipeline(const PipelineConfig& cfg) {
  if (cfg.preset == Preset::kNone) {
    throw ConfigError("preset", 0, "pipeline needs a preset (etc or efc)");
  }
  if (cfg.inputs.empty()) throw ConfigError("input.paths", 0, "no input paths");
  const PipelineOutputs o = PipelineLayout(cfg);
  CorpusStats drops;
  auto keep_drops = [&drops](const StageResult& r) {
    for (const auto& [reason, n] : r.stats.dropped_by_reason) drops.AddDrop(reason, n);
  };

  StageResult r;
  if (cfg.preset == Preset::kEtc) {
    r = IngestTweets(cfg.inputs, o.raw, cfg);
    WriteReports(o.raw, "ingest-tweets", r, cfg);
  } else {
    r = IngestForums(cfg.inputs, o.raw, cfg);
    WriteReports(o.raw, "ingest-forums", r, cfg);
  }
  keep_drops(r);
  r = CleanStage(o.raw, o.cleaned, cfg);
  WriteReports(o.cleaned, "clean", r, cfg);
  keep_drops(r);
  r = DedupStage(o.cleaned, o.deduped, cfg);
  WriteReports(o.deduped, "dedup", r, cfg);
  keep_drops(r);
  StageResult final_result = r;
  if (o.final_corpus != o.deduped) {
    final_result = SampleStage(o.deduped, o.final_corpus, cfg);
    WriteReports(o.final_corpus, "sample", final_result, cfg);
    keep_drops(final_result);
  }
  if (!o.manifest.empty()) {
    r = ManifestStage(o.final_corpus, o.manifest, cfg);
    WriteReports(o.manifest, "manifest", r, cfg);
    keep_drops(r);
  }
  std::string mlm_input = o.final_corpus;
  if (cfg.split_enabled) {
    const SplitStageResult s = SplitStage(o.final_corpus, o.train, o.dev, cfg);
    WriteReports(o.train, "split", s.train, cfg);
    WriteReports(o.dev, "split", s.dev, cfg);
    mlm_input = o.train;
  }
  if (!o.mlm.empty()) {
    r = MlmPrepStage(mlm_input, o.mlm, "", cfg);
    WriteReports(o.mlm, "mlm-prep", r, cfg);
  }

  CorpusStats summary = final_result.stats;
  summary.dropped_by_reason = drops.dropped_by_reason;
  WriteFile(o.stats, summary.ToJson());
  WriteFile(o.stamp, StampJson("pipeline", cfg));
  return summary;
}

}  // namespace egycorpus
