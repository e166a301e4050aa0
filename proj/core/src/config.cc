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

#include <filesystem>
#include <set>

#include <yaml-cpp/yaml.h>

#include "json.hpp"

#include "egycorpus/html_extract.h"

#ifndef EGYCORPUS_VERSION
#define EGYCORPUS_VERSION "0.0.0"
#endif

namespace egycorpus {

namespace fs = std::filesystem;

ConfigError::ConfigError(std::string field, int line, const std::string& message)
    : std::runtime_error(
          (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
          (field.empty() ? std::string() : field + ": ") + message),
      field_(std::move(field)),
      line_(line) {}

std::string_view PresetName(Preset preset) {
  switch (preset) {
    case Preset::kEtc:
      return "etc";
    case Preset::kEfc:
      return "efc";
    case Preset::kNone:
      break;
  }
  return "none";
}

std::string_view ToolVersion() { return EGYCORPUS_VERSION; }

namespace {

int LineOf(const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  return mark.line >= 0 ? mark.line + 1 : 0;
}

std::string Join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

class YamlReader {
 public:
  YamlReader(std::string base_dir, std::map<std::string, int>* lines)
      : base_dir_(std::move(base_dir)), lines_(lines) {}

  void RequireMap(const YAML::Node& node, const std::string& field,
                  std::initializer_list<std::string_view> allowed) const {
    if (!node.IsMap()) throw ConfigError(field, LineOf(node), "expected a mapping");
    for (const auto& kv : node) {
      const std::string key = kv.first.as<std::string>();
      bool ok = false;
      for (std::string_view a : allowed) ok = ok || key == a;
      if (!ok) throw ConfigError(Join(field, key), LineOf(kv.first), "unknown key");
    }
  }

  template <class T>
  T Get(const YAML::Node& node, const std::string& field, const char* expected) const {
    (*lines_)[field] = LineOf(node);
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(field, LineOf(node), std::string("expected ") + expected);
    }
  }

  std::string Path(const YAML::Node& node, const std::string& field) const {
    const std::string raw = Get<std::string>(node, field, "a path string");
    if (raw.empty()) return raw;
    const fs::path p(raw);
    return p.is_absolute() ? raw : (fs::path(base_dir_) / p).lexically_normal().string();
  }

  std::vector<std::string> StringList(const YAML::Node& node, const std::string& field) const {
    if (node.IsScalar()) return {Get<std::string>(node, field, "a string")};
    if (!node.IsSequence()) throw ConfigError(field, LineOf(node), "expected a list of strings");
    std::vector<std::string> out;
    for (const auto& item : node) out.push_back(Get<std::string>(item, field, "a string"));
    return out;
  }

 private:
  std::string base_dir_;
  std::map<std::string, int>* lines_;
};

template <class T>
void Assign(const YamlReader& r, const YAML::Node& map, const char* key, const std::string& prefix,
            const char* expected, T* out) {
  if (const YAML::Node n = map[key]) *out = r.Get<T>(n, Join(prefix, key), expected);
}

}  // namespace

PipelineConfig ParseConfig(std::string_view yaml, const std::string& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::ParserException& e) {
    throw ConfigError("", e.mark.line + 1, std::string("YAML syntax error: ") + e.msg);
  }
  PipelineConfig cfg;
  if (root.IsNull()) return cfg;
  const YamlReader r(base_dir, &cfg.field_lines);
  r.RequireMap(root, "", {"preset", "workers", "input", "terms", "normalization", "clean",
                          "forums", "dedup", "sample", "split", "mlm", "output"});

  if (const YAML::Node n = root["preset"]) {
    const std::string p = r.Get<std::string>(n, "preset", "etc or efc");
    if (p == "etc") {
      cfg.preset = Preset::kEtc;
    } else if (p == "efc") {
      cfg.preset = Preset::kEfc;
    } else {
      throw ConfigError("preset", LineOf(n), "expected etc or efc, got '" + p + "'");
    }
  }
  Assign(r, root, "workers", "", "an integer", &cfg.workers);
  if (const YAML::Node n = root["terms"]) cfg.terms_path = r.Path(n, "terms");

  if (const YAML::Node in = root["input"]) {
    r.RequireMap(in, "input", {"paths", "format", "tweet_fields"});
    if (const YAML::Node n = in["paths"]) {
      for (const std::string& p : r.StringList(n, "input.paths")) {
        const fs::path path(p);
        cfg.inputs.push_back(path.is_absolute()
                                 ? p
                                 : (fs::path(base_dir) / path).lexically_normal().string());
      }
    }
    Assign(r, in, "format", "input", "a string", &cfg.input_format);
    if (const YAML::Node tf = in["tweet_fields"]) {
      r.RequireMap(tf, "input.tweet_fields", {"id", "text", "location"});
      Assign(r, tf, "id", "input.tweet_fields", "a string", &cfg.tweet_fields.id);
      Assign(r, tf, "text", "input.tweet_fields", "a string", &cfg.tweet_fields.text);
      Assign(r, tf, "location", "input.tweet_fields", "a string", &cfg.tweet_fields.location);
    }
  }

  if (const YAML::Node nz = root["normalization"]) {
    const std::string f = "normalization";
    r.RequireMap(nz, f, {"unify_arabic_letters", "strip_diacritics", "strip_tatweel",
                         "fold_latin_accents", "strip_symbols_punct", "strip_emoji",
                         "collapse_whitespace", "collapse_letter_runs", "emoji_allowlist",
                         "letter_map", "unify_ta_marbuta"});
    NormalizationProfile& p = cfg.location_profile;
    Assign(r, nz, "unify_arabic_letters", f, "a boolean", &p.unify_arabic_letters);
    Assign(r, nz, "strip_diacritics", f, "a boolean", &p.strip_diacritics);
    Assign(r, nz, "strip_tatweel", f, "a boolean", &p.strip_tatweel);
    Assign(r, nz, "fold_latin_accents", f, "a boolean", &p.fold_latin_accents);
    Assign(r, nz, "strip_symbols_punct", f, "a boolean", &p.strip_symbols_punct);
    Assign(r, nz, "strip_emoji", f, "a boolean", &p.strip_emoji);
    Assign(r, nz, "collapse_whitespace", f, "a boolean", &p.collapse_whitespace);
    Assign(r, nz, "unify_ta_marbuta", f, "a boolean", &cfg.unify_ta_marbuta);
    if (const YAML::Node n = nz["collapse_letter_runs"]) {
      if (n.IsNull()) {
        p.collapse_letter_runs.reset();
      } else {
        const int cap = r.Get<int>(n, f + ".collapse_letter_runs", "an integer or null");
        if (cap < 1) throw ConfigError(f + ".collapse_letter_runs", LineOf(n), "must be >= 1");
        p.collapse_letter_runs = cap;
      }
    }
    if (const YAML::Node n = nz["emoji_allowlist"]) {
      p.emoji_allowlist = r.StringList(n, f + ".emoji_allowlist");
    }
    if (const YAML::Node n = nz["letter_map"]) cfg.letter_map_path = r.Path(n, f + ".letter_map");
  }

  if (const YAML::Node c = root["clean"]) {
    const std::string f = "clean";
    r.RequireMap(c, f, {"max_letter_run", "max_other_run", "max_digit_run_kept", "min_words",
                        "english_majority_threshold", "keep_hashtag_body"});
    Assign(r, c, "max_letter_run", f, "an integer", &cfg.clean.max_letter_run);
    Assign(r, c, "max_other_run", f, "an integer", &cfg.clean.max_other_run);
    Assign(r, c, "max_digit_run_kept", f, "an integer", &cfg.clean.max_digit_run_kept);
    Assign(r, c, "min_words", f, "an integer", &cfg.clean.min_words);
    Assign(r, c, "english_majority_threshold", f, "a number",
           &cfg.clean.english_majority_threshold);
    Assign(r, c, "keep_hashtag_body", f, "a boolean", &cfg.clean.keep_hashtag_body);
  }

  if (const YAML::Node fo = root["forums"]) {
    r.RequireMap(fo, "forums", {"fallback_encoding", "selectors"});
    Assign(r, fo, "fallback_encoding", "forums", "a charset name", &cfg.fallback_encoding);
    if (const YAML::Node sel = fo["selectors"]) {
      if (!sel.IsMap()) throw ConfigError("forums.selectors", LineOf(sel), "expected a mapping");
      for (const auto& kv : sel) {
        const std::string name = kv.first.as<std::string>();
        const std::string field = "forums.selectors." + name;
        std::vector<std::string> list = r.StringList(kv.second, field);
        try {
          ParseSelectorList(list);
        } catch (const std::invalid_argument& e) {
          throw ConfigError(field, LineOf(kv.second), e.what());
        }
        cfg.forum_selectors[name] = std::move(list);
      }
    }
  }

  if (const YAML::Node d = root["dedup"]) {
    r.RequireMap(d, "dedup", {"mode", "shards", "paranoid"});
    if (const YAML::Node n = d["mode"]) {
      const std::string mode = r.Get<std::string>(n, "dedup.mode", "single or sharded");
      const auto parsed = ParseDedupMode(mode);
      if (!parsed) throw ConfigError("dedup.mode", LineOf(n), "expected single or sharded");
      cfg.dedup.mode = *parsed;
    }
    Assign(r, d, "shards", "dedup", "an integer", &cfg.dedup.shards);
    Assign(r, d, "paranoid", "dedup", "a boolean", &cfg.dedup.paranoid);
  }

  if (const YAML::Node s = root["sample"]) {
    r.RequireMap(s, "sample", {"fraction", "seed"});
    Assign(r, s, "fraction", "sample", "a number", &cfg.sample_fraction);
    Assign(r, s, "seed", "sample", "an unsigned integer", &cfg.sample_seed);
  }

  if (const YAML::Node s = root["split"]) {
    r.RequireMap(s, "split", {"enabled", "train_fraction", "seed"});
    Assign(r, s, "enabled", "split", "a boolean", &cfg.split_enabled);
    Assign(r, s, "train_fraction", "split", "a number", &cfg.train_fraction);
    Assign(r, s, "seed", "split", "an unsigned integer", &cfg.split_seed);
  }

  if (const YAML::Node m = root["mlm"]) {
    const std::string f = "mlm";
    r.RequireMap(m, f, {"vocab", "vocab_limit", "max_seq_len", "mask_rate", "mask_token_prob",
                        "random_token_prob", "keep_token_prob", "seed"});
    if (const YAML::Node n = m["vocab"]) cfg.vocab_path = r.Path(n, "mlm.vocab");
    Assign(r, m, "vocab_limit", f, "an integer", &cfg.vocab_limit);
    Assign(r, m, "max_seq_len", f, "an integer", &cfg.mlm.max_seq_len);
    Assign(r, m, "mask_rate", f, "a number", &cfg.mlm.mask_rate);
    Assign(r, m, "mask_token_prob", f, "a number", &cfg.mlm.mask_token_prob);
    Assign(r, m, "random_token_prob", f, "a number", &cfg.mlm.random_token_prob);
    Assign(r, m, "keep_token_prob", f, "a number", &cfg.mlm.keep_token_prob);
    Assign(r, m, "seed", f, "an unsigned integer", &cfg.mlm.seed);
  }

  if (const YAML::Node o = root["output"]) {
    r.RequireMap(o, "output", {"dir"});
    if (const YAML::Node n = o["dir"]) cfg.output_dir = r.Path(n, "output.dir");
  }
  return cfg;
}

PipelineConfig LoadConfig(const std::string& path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const IoError& e) {
    throw ConfigError("", 0, e.what());
  }
  const fs::path parent = fs::path(path).parent_path();
  return ParseConfig(text, parent.empty() ? "." : parent.string());
}

void PipelineConfig::Validate() const {
  auto fail = [this](const std::string& field, const std::string& message) {
    auto it = field_lines.find(field);
    throw ConfigError(field, it == field_lines.end() ? 0 : it->second, message);
  };
  auto check_exists = [&](const std::string& path, const std::string& field) {
    if (!path.empty() && !fs::exists(path)) fail(field, "path does not exist: " + path);
  };
  static const std::set<std::string> kFormats = {"", "tweets-jsonl", "forum-html", "raw-jsonl",
                                                 "corpus"};
  if (!kFormats.count(input_format)) {
    fail("input.format", "unknown format '" + input_format + "'");
  }
  for (const std::string& p : inputs) check_exists(p, "input.paths");
  check_exists(terms_path, "terms");
  check_exists(letter_map_path, "normalization.letter_map");
  check_exists(vocab_path, "mlm.vocab");
  if (workers < 1) fail("workers", "must be >= 1");
  try {
    clean.Validate();
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    fail("clean." + what.substr(0, what.find(' ')), what);
  }
  if (!(sample_fraction >= 0.0 && sample_fraction <= 1.0)) {
    fail("sample.fraction", "must be in [0,1]");
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    fail("split.train_fraction", "must be in (0,1)");
  }
  if (dedup.shards < 1) fail("dedup.shards", "must be >= 1");
  if (vocab_limit < 5) fail("mlm.vocab_limit", "must be >= 5");
  try {
    mlm.Validate();
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    const std::string field = "mlm." + what.substr(0, what.find(' '));
    fail(field_lines.count(field) ? field : "mlm", what);
  }
  if (fallback_encoding.empty()) {
    fail("forums.fallback_encoding", "must not be empty");
  }
}

std::string PipelineConfig::CanonicalJson() const {
  nlohmann::json j;
  j["preset"] = std::string(PresetName(preset));
  j["input"] = {{"paths", inputs},
                {"format", input_format},
                {"tweet_fields",
                 {{"id", tweet_fields.id},
                  {"text", tweet_fields.text},
                  {"location", tweet_fields.location}}}};
  j["terms"] = terms_path;
  const NormalizationProfile& p = location_profile;
  j["normalization"] = {
      {"unify_arabic_letters", p.unify_arabic_letters},
      {"strip_diacritics", p.strip_diacritics},
      {"strip_tatweel", p.strip_tatweel},
      {"fold_latin_accents", p.fold_latin_accents},
      {"strip_symbols_punct", p.strip_symbols_punct},
      {"strip_emoji", p.strip_emoji},
      {"collapse_whitespace", p.collapse_whitespace},
      {"collapse_letter_runs",
       p.collapse_letter_runs ? nlohmann::json(*p.collapse_letter_runs) : nlohmann::json()},
      {"emoji_allowlist", p.emoji_allowlist},
      {"letter_map", letter_map_path},
      {"unify_ta_marbuta", unify_ta_marbuta}};
  j["clean"] = {{"max_letter_run", clean.max_letter_run},
                {"max_other_run", clean.max_other_run},
                {"max_digit_run_kept", clean.max_digit_run_kept},
                {"min_words", clean.min_words},
                {"english_majority_threshold", clean.english_majority_threshold},
                {"keep_hashtag_body", clean.keep_hashtag_body}};
  j["forums"] = {{"fallback_encoding", fallback_encoding}, {"selectors", forum_selectors}};
  j["dedup"] = {{"mode", std::string(DedupModeName(dedup.mode))},
                {"shards", dedup.shards},
                {"paranoid", dedup.paranoid}};
  j["sample"] = {{"fraction", sample_fraction}, {"seed", sample_seed}};
  j["split"] = {{"enabled", split_enabled},
                {"train_fraction", train_fraction},
                {"seed", split_seed}};
  j["mlm"] = {{"vocab", vocab_path},
              {"vocab_limit", vocab_limit},
              {"max_seq_len", mlm.max_seq_len},
              {"mask_rate", mlm.mask_rate},
              {"mask_token_prob", mlm.mask_token_prob},
              {"random_token_prob", mlm.random_token_prob},
              {"keep_token_prob", mlm.keep_token_prob},
              {"seed", mlm.seed}};
  return j.dump();
}

std::string PipelineConfig::Digest() const { return DigestOf(CanonicalJson()).Hex(); }

}  // namespace egycorpus
