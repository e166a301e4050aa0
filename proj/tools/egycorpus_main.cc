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

// egycorpus: command-line front end for the corpus stages.
//
//   egycorpus [global flags] <subcommand> [flags]
//
// Settings come from the YAML config named by --config or $EGYCORPUS_CONFIG
// and are then overridden by flags. Exit status: 0 success, 2 invalid
// configuration, 3 I/O failure.

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <type_traits>
#include <vector>

#include "CLI11.hpp"

#include "egycorpus/config.h"
#include "egycorpus/corpus_io.h"
#include "egycorpus/pipeline.h"

namespace {

using egycorpus::PipelineConfig;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

using Overrides = std::vector<std::function<void(PipelineConfig&)>>;

// Registers a flag whose value, when given, replaces a config field.
template <class T>
CLI::Option* Mirror(CLI::App& app, Overrides& overrides, const std::string& flag,
                    const std::string& help, std::function<void(PipelineConfig&, const T&)> set) {
  auto value = std::make_shared<T>();
  CLI::Option* opt = nullptr;
  if constexpr (std::is_same_v<T, bool>) {
    // Bare "--flag" means true; "--flag=false" turns a config value off.
    opt = app.add_flag(flag, *value, help);
  } else {
    opt = app.add_option(flag, *value, help);
  }
  overrides.push_back([opt, value, set](PipelineConfig& cfg) {
    if (opt->count() > 0) set(cfg, *value);
  });
  return opt;
}

void AddConfigFlags(CLI::App& app, Overrides& ov) {
  using C = PipelineConfig;
  Mirror<std::string>(app, ov, "--preset", "etc or efc", [](C& c, const std::string& v) {
    if (v == "etc") {
      c.preset = egycorpus::Preset::kEtc;
    } else if (v == "efc") {
      c.preset = egycorpus::Preset::kEfc;
    } else {
      throw egycorpus::ConfigError("preset", 0, "expected etc or efc, got '" + v + "'");
    }
  });
  Mirror<std::vector<std::string>>(app, ov, "-i,--input", "input files or directories",
                                   [](C& c, const auto& v) { c.inputs = v; });
  Mirror<std::string>(app, ov, "--input-format", "tweets-jsonl|forum-html|raw-jsonl|corpus",
                      [](C& c, const std::string& v) { c.input_format = v; });
  Mirror<std::string>(app, ov, "--tweet-id-field", "dotted JSON path of the tweet id",
                      [](C& c, const std::string& v) { c.tweet_fields.id = v; });
  Mirror<std::string>(app, ov, "--tweet-text-field", "dotted JSON path of the tweet text",
                      [](C& c, const std::string& v) { c.tweet_fields.text = v; });
  Mirror<std::string>(app, ov, "--tweet-location-field", "dotted JSON path of the location",
                      [](C& c, const std::string& v) { c.tweet_fields.location = v; });
  Mirror<std::string>(app, ov, "--terms", "location term list file",
                      [](C& c, const std::string& v) { c.terms_path = v; });
  Mirror<std::string>(app, ov, "--letter-map", "letter unification table",
                      [](C& c, const std::string& v) { c.letter_map_path = v; });
  Mirror<bool>(app, ov, "--unify-ta-marbuta", "also map ta marbuta to ha",
               [](C& c, const bool& v) { c.unify_ta_marbuta = v; });

  auto norm = [&](const char* flag, bool egycorpus::NormalizationProfile::*field) {
    Mirror<bool>(app, ov, flag, "location normalization step on/off",
                 [field](C& c, const bool& v) { c.location_profile.*field = v; });
  };
  norm("--unify-arabic-letters", &egycorpus::NormalizationProfile::unify_arabic_letters);
  norm("--strip-diacritics", &egycorpus::NormalizationProfile::strip_diacritics);
  norm("--strip-tatweel", &egycorpus::NormalizationProfile::strip_tatweel);
  norm("--fold-latin-accents", &egycorpus::NormalizationProfile::fold_latin_accents);
  norm("--strip-symbols-punct", &egycorpus::NormalizationProfile::strip_symbols_punct);
  norm("--strip-emoji", &egycorpus::NormalizationProfile::strip_emoji);
  norm("--collapse-whitespace", &egycorpus::NormalizationProfile::collapse_whitespace);
  Mirror<int>(app, ov, "--collapse-letter-runs", "location letter-run cap (0 = off)",
              [](C& c, const int& v) {
                if (v < 0) throw egycorpus::ConfigError("normalization.collapse_letter_runs", 0,
                                                        "must be >= 0");
                if (v == 0) {
                  c.location_profile.collapse_letter_runs.reset();
                } else {
                  c.location_profile.collapse_letter_runs = v;
                }
              });
  Mirror<std::vector<std::string>>(app, ov, "--emoji-allowlist", "clusters never stripped",
                                   [](C& c, const auto& v) {
                                     c.location_profile.emoji_allowlist = v;
                                   });

  Mirror<int>(app, ov, "--max-letter-run", "letter repetition cap",
              [](C& c, const int& v) { c.clean.max_letter_run = v; });
  Mirror<int>(app, ov, "--max-other-run", "non-letter repetition cap",
              [](C& c, const int& v) { c.clean.max_other_run = v; });
  Mirror<int>(app, ov, "--max-digit-run-kept", "longest number kept",
              [](C& c, const int& v) { c.clean.max_digit_run_kept = v; });
  Mirror<int>(app, ov, "--min-words", "records with fewer words are dropped",
              [](C& c, const int& v) { c.clean.min_words = v; });
  Mirror<double>(app, ov, "--english-majority-threshold", "English token share that drops",
                 [](C& c, const double& v) { c.clean.english_majority_threshold = v; });
  Mirror<bool>(app, ov, "--keep-hashtag-body", "keep the word of a removed hashtag",
               [](C& c, const bool& v) { c.clean.keep_hashtag_body = v; });

  Mirror<std::string>(app, ov, "--fallback-encoding", "charset of undeclared non-UTF-8 pages",
                      [](C& c, const std::string& v) { c.fallback_encoding = v; });
  Mirror<std::vector<std::string>>(
      app, ov, "--selector", "FORUM=SELECTOR[,SELECTOR...] (repeatable)",
      [](C& c, const std::vector<std::string>& v) {
        c.forum_selectors.clear();
        for (const std::string& item : v) {
          const size_t eq = item.find('=');
          if (eq == std::string::npos || eq == 0) {
            throw egycorpus::ConfigError("forums.selectors", 0,
                                         "expected FORUM=SELECTOR, got '" + item + "'");
          }
          c.forum_selectors[item.substr(0, eq)].push_back(item.substr(eq + 1));
        }
      });

  Mirror<std::string>(app, ov, "--dedup-mode", "single or sharded", [](C& c, const std::string& v) {
    const auto mode = egycorpus::ParseDedupMode(v);
    if (!mode) throw egycorpus::ConfigError("dedup.mode", 0, "expected single or sharded");
    c.dedup.mode = *mode;
  });
  Mirror<int>(app, ov, "--shards", "digest-range shards for sharded dedup",
              [](C& c, const int& v) { c.dedup.shards = v; });
  Mirror<bool>(app, ov, "--paranoid", "verify digest hits against full texts",
               [](C& c, const bool& v) { c.dedup.paranoid = v; });

  Mirror<double>(app, ov, "--fraction", "sample keep probability",
                 [](C& c, const double& v) { c.sample_fraction = v; });
  Mirror<uint64_t>(app, ov, "--seed", "sample seed",
                   [](C& c, const uint64_t& v) { c.sample_seed = v; });
  Mirror<bool>(app, ov, "--split", "write train/dev splits in the pipeline",
               [](C& c, const bool& v) { c.split_enabled = v; });
  Mirror<double>(app, ov, "--train-fraction", "train share of the split",
                 [](C& c, const double& v) { c.train_fraction = v; });
  Mirror<uint64_t>(app, ov, "--split-seed", "split seed",
                   [](C& c, const uint64_t& v) { c.split_seed = v; });

  Mirror<std::string>(app, ov, "--vocab", "vocabulary file",
                      [](C& c, const std::string& v) { c.vocab_path = v; });
  Mirror<size_t>(app, ov, "--vocab-limit", "maximum vocabulary size",
                 [](C& c, const size_t& v) { c.vocab_limit = v; });
  Mirror<size_t>(app, ov, "--max-seq-len", "example length including cls/sep",
                 [](C& c, const size_t& v) { c.mlm.max_seq_len = v; });
  Mirror<double>(app, ov, "--mask-rate", "share of maskable tokens selected",
                 [](C& c, const double& v) { c.mlm.mask_rate = v; });
  Mirror<double>(app, ov, "--mask-token-prob", "selected tokens replaced by [MASK]",
                 [](C& c, const double& v) { c.mlm.mask_token_prob = v; });
  Mirror<double>(app, ov, "--random-token-prob", "selected tokens replaced at random",
                 [](C& c, const double& v) { c.mlm.random_token_prob = v; });
  Mirror<double>(app, ov, "--keep-token-prob", "selected tokens left unchanged",
                 [](C& c, const double& v) { c.mlm.keep_token_prob = v; });
  Mirror<uint64_t>(app, ov, "--mlm-seed", "masking seed",
                   [](C& c, const uint64_t& v) { c.mlm.seed = v; });

  Mirror<std::string>(app, ov, "--output-dir", "directory for default output names",
                      [](C& c, const std::string& v) { c.output_dir = v; });
  Mirror<int>(app, ov, "-j,--workers", "worker threads",
              [](C& c, const int& v) { c.workers = v; });
}

std::string DefaultOutput(const PipelineConfig& cfg, const char* name) {
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

const std::string& SingleInput(const PipelineConfig& cfg, const char* stage) {
  if (cfg.inputs.size() != 1) {
    throw egycorpus::ConfigError("input.paths", 0,
                                 std::string(stage) + " takes exactly one input file");
  }
  return cfg.inputs.front();
}

int Run(int argc, char** argv) {
  CLI::App app{"Egyptian-dialect corpus construction toolkit", "egycorpus"};
  app.set_version_flag("--version", std::string(egycorpus::ToolVersion()));
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("-c,--config", config_path, "YAML config file")
      ->envname(egycorpus::kConfigEnvVar);
  Overrides overrides;
  AddConfigFlags(app, overrides);

  std::string output;
  std::string train_output, dev_output, debug_output;
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", output, "output file");
  };
  CLI::App* ingest_tweets =
      app.add_subcommand("ingest-tweets", "JSON-Lines tweets -> location-gated raw records");
  CLI::App* ingest_forums =
      app.add_subcommand("ingest-forums", "saved forum pages -> raw records");
  CLI::App* clean = app.add_subcommand("clean", "raw records -> cleaned corpus");
  CLI::App* dedup = app.add_subcommand("dedup", "drop exact duplicate texts");
  CLI::App* stats = app.add_subcommand("stats", "corpus counters report");
  CLI::App* sample = app.add_subcommand("sample", "seeded Bernoulli sample");
  CLI::App* split = app.add_subcommand("split", "seeded train/dev split");
  CLI::App* manifest = app.add_subcommand("manifest", "tweet-ID release manifest");
  CLI::App* mlm = app.add_subcommand("mlm-prep", "masked-LM training examples");
  CLI::App* pipeline = app.add_subcommand("pipeline", "all stages for the etc or efc preset");
  for (CLI::App* sub : {ingest_tweets, ingest_forums, clean, dedup, stats, sample, manifest, mlm}) {
    add_output(sub);
  }
  split->add_option("--train-output", train_output, "train corpus");
  split->add_option("--dev-output", dev_output, "dev corpus");
  mlm->add_option("--debug-output", debug_output, "text rendering of the examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  PipelineConfig cfg;
  if (!config_path.empty()) cfg = egycorpus::LoadConfig(config_path);
  for (const auto& apply : overrides) apply(cfg);
  cfg.Validate();

  using egycorpus::StageResult;
  auto out_or = [&](const char* name) { return output.empty() ? DefaultOutput(cfg, name) : output; };
  auto finish = [&](const std::string& out, const char* stage, const StageResult& r) {
    egycorpus::WriteReports(out, stage, r, cfg);
    std::cerr << stage << ": " << r.stats.records << " records kept, "
              << r.stats.TotalDropped() << " dropped -> " << out << "\n";
  };

  if (*ingest_tweets) {
    const std::string out = out_or("raw.jsonl");
    finish(out, "ingest-tweets", egycorpus::IngestTweets(cfg.inputs, out, cfg));
  } else if (*ingest_forums) {
    const std::string out = out_or("raw.jsonl");
    finish(out, "ingest-forums", egycorpus::IngestForums(cfg.inputs, out, cfg));
  } else if (*clean) {
    const std::string out = out_or("cleaned.txt");
    finish(out, "clean", egycorpus::CleanStage(SingleInput(cfg, "clean"), out, cfg));
  } else if (*dedup) {
    const std::string out = out_or("corpus.txt");
    finish(out, "dedup", egycorpus::DedupStage(SingleInput(cfg, "dedup"), out, cfg));
  } else if (*sample) {
    const std::string out = out_or("sample.txt");
    finish(out, "sample", egycorpus::SampleStage(SingleInput(cfg, "sample"), out, cfg));
  } else if (*split) {
    const std::string train = train_output.empty() ? DefaultOutput(cfg, "train.txt") : train_output;
    const std::string dev = dev_output.empty() ? DefaultOutput(cfg, "dev.txt") : dev_output;
    const auto r = egycorpus::SplitStage(SingleInput(cfg, "split"), train, dev, cfg);
    finish(train, "split", r.train);
    finish(dev, "split", r.dev);
  } else if (*manifest) {
    const std::string out = out_or("manifest.txt");
    finish(out, "manifest", egycorpus::ManifestStage(SingleInput(cfg, "manifest"), out, cfg));
  } else if (*mlm) {
    const std::string out = out_or("mlm.bin");
    finish(out, "mlm-prep",
           egycorpus::MlmPrepStage(SingleInput(cfg, "mlm-prep"), out, debug_output, cfg));
  } else if (*stats) {
    // The report itself is the output; "<output>.stats.json" is not written.
    const std::string out = out_or("stats.json");
    const StageResult r = egycorpus::StatsStage(cfg.inputs, cfg);
    egycorpus::WriteFile(out, r.stats.ToJson());
    egycorpus::WriteFile(egycorpus::StampPath(out), egycorpus::StampJson("stats", cfg));
    std::cout << r.stats.ToJson();
  } else if (*pipeline) {
    const egycorpus::CorpusStats s = egycorpus::RunPipeline(cfg);
    std::cerr << "pipeline: " << s.records << " records, " << s.words << " words -> "
              << cfg.output_dir << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Run(argc, argv);
  } catch (const egycorpus::ConfigError& e) {
    std::cerr << "egycorpus: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const egycorpus::IoError& e) {
    std::cerr << "egycorpus: I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "egycorpus: I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "egycorpus: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
