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

#include "egycorpus/corpus_io.h"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "json.hpp"

#include "egycorpus/unicode.h"

namespace egycorpus {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const json* Lookup(const json& root, std::string_view dotted) {
  const json* node = &root;
  while (!dotted.empty()) {
    const size_t dot = dotted.find('.');
    const std::string key(dotted.substr(0, dot));
    if (!node->is_object()) return nullptr;
    auto it = node->find(key);
    if (it == node->end()) return nullptr;
    node = &*it;
    if (dot == std::string_view::npos) break;
    dotted.remove_prefix(dot + 1);
  }
  return node;
}

}  // namespace

std::string SanitizeId(std::string_view id) {
  std::string out(id);
  for (char& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

std::optional<RawRecord> ParseTweetLine(std::string_view line, const TweetFieldPaths& paths,
                                        std::string* error) {
  json doc = json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    if (error) *error = "malformed JSON";
    return std::nullopt;
  }
  RawRecord record;
  record.source = Source::kTweet;
  const json* id = Lookup(doc, paths.id);
  if (id == nullptr || id->is_null()) {
    if (error) *error = "missing id field '" + paths.id + "'";
    return std::nullopt;
  }
  if (id->is_number_unsigned() || id->is_number_integer()) {
    record.id = id->dump();
  } else if (id->is_string()) {
    record.id = SanitizeId(unicode::SanitizeUtf8(id->get<std::string>()));
  } else {
    if (error) *error = "id field has unsupported type";
    return std::nullopt;
  }
  const json* text = Lookup(doc, paths.text);
  if (text == nullptr || !text->is_string()) {
    if (error) *error = "missing or non-string text field '" + paths.text + "'";
    return std::nullopt;
  }
  record.text = unicode::SanitizeUtf8(text->get<std::string>());
  const json* location = Lookup(doc, paths.location);
  if (location != nullptr && location->is_string()) {
    record.location = unicode::SanitizeUtf8(location->get<std::string>());
  }
  return record;
}

std::string RawRecordToJsonLine(const RawRecord& record) {
  json j;
  j["id"] = record.id;
  j["source"] = std::string(SourceName(record.source));
  j["text"] = record.text;
  if (record.location) j["location"] = *record.location;
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

RawRecord RawRecordFromJsonLine(std::string_view line) {
  json j = json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw std::invalid_argument("malformed raw record");
  RawRecord r;
  if (!j.contains("id") || !j["id"].is_string() || !j.contains("text") ||
      !j["text"].is_string()) {
    throw std::invalid_argument("raw record needs string id and text");
  }
  r.id = j["id"].get<std::string>();
  r.text = j["text"].get<std::string>();
  const std::string source = j.value("source", std::string("tweet"));
  const auto parsed = ParseSource(source);
  if (!parsed) throw std::invalid_argument("unknown source '" + source + "'");
  r.source = *parsed;
  if (j.contains("location") && j["location"].is_string()) {
    r.location = j["location"].get<std::string>();
  }
  return r;
}

CorpusWriter::CorpusWriter(const std::string& path, bool write_sidecar)
    : path_(path), sidecar_(write_sidecar) {
  text_.open(path, std::ios::binary | std::ios::trunc);
  if (!text_) throw IoError("cannot write " + path);
  if (sidecar_) {
    meta_.open(SidecarPath(path), std::ios::binary | std::ios::trunc);
    if (!meta_) throw IoError("cannot write " + SidecarPath(path));
  }
}

void CorpusWriter::Write(const CleanRecord& record) {
  ++lines_;
  text_ << record.text << '\n';
  if (sidecar_) {
    meta_ << SanitizeId(record.id) << '\t' << SourceName(record.source) << '\t' << lines_
          << '\n';
  }
}

void CorpusWriter::Close() {
  text_.close();
  if (text_.fail()) throw IoError("error writing " + path_);
  if (sidecar_) {
    meta_.close();
    if (meta_.fail()) throw IoError("error writing " + SidecarPath(path_));
  }
}

CorpusReader::CorpusReader(const std::string& path, Source default_source)
    : path_(path), default_source_(default_source) {
  text_.open(path, std::ios::binary);
  if (!text_) throw IoError("cannot open " + path);
  if (fs::exists(SidecarPath(path))) {
    meta_.open(SidecarPath(path), std::ios::binary);
    if (!meta_) throw IoError("cannot open " + SidecarPath(path));
    has_sidecar_ = true;
  }
}

bool CorpusReader::Next(CleanRecord* record) {
  std::string line;
  if (!std::getline(text_, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  ++lines_;
  record->text = std::move(line);
  if (!has_sidecar_) {
    record->id = std::to_string(lines_);
    record->source = default_source_;
    return true;
  }
  std::string meta;
  if (!std::getline(meta_, meta)) {
    throw IoError(SidecarPath(path_) + ": fewer sidecar rows than corpus lines");
  }
  const size_t t1 = meta.find('\t');
  const size_t t2 = t1 == std::string::npos ? t1 : meta.find('\t', t1 + 1);
  if (t2 == std::string::npos) {
    throw IoError(SidecarPath(path_) + ": malformed row " + std::to_string(lines_));
  }
  const auto source = ParseSource(std::string_view(meta).substr(t1 + 1, t2 - t1 - 1));
  if (!source) throw IoError(SidecarPath(path_) + ": bad source in row " + std::to_string(lines_));
  record->id = meta.substr(0, t1);
  record->source = *source;
  return true;
}

std::vector<CleanRecord> ReadCorpus(const std::string& path, Source default_source) {
  CorpusReader reader(path, default_source);
  std::vector<CleanRecord> out;
  CleanRecord r;
  while (reader.Next(&r)) out.push_back(r);
  return out;
}

void WriteCorpus(const std::string& path, const std::vector<CleanRecord>& records) {
  CorpusWriter writer(path);
  for (const CleanRecord& r : records) writer.Write(r);
  writer.Close();
}

uint64_t CountLines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  uint64_t n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

std::vector<std::string> ListHtmlFiles(const std::string& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw IoError("not a directory: " + root);
  std::vector<std::string> files;
  for (fs::recursive_directory_iterator it(root, ec), end; it != end; it.increment(ec)) {
    if (ec) throw IoError("cannot walk " + root + ": " + ec.message());
    if (!it->is_regular_file()) continue;
    std::string ext = it->path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".html" || ext == ".htm") files.push_back(it->path().string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("error writing " + path);
}

}  // namespace egycorpus
