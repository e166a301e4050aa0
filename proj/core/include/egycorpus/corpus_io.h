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

#ifndef EGYCORPUS_CORPUS_IO_H_
#define EGYCORPUS_CORPUS_IO_H_

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "egycorpus/record.h"

namespace egycorpus {

// File-system level failure (missing input, unwritable output, corrupt
// sidecar). The CLI maps it to exit status 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dotted JSON paths of the tweet fields in a JSON-Lines export.
struct TweetFieldPaths {
  std::string id = "id";
  std::string text = "text";
  std::string location = "user.location";
};

// Parses one export line. Returns nullopt and sets *error for malformed
// JSON, a missing id/text or a wrongly typed field. Numeric ids are
// rendered in decimal; invalid UTF-8 is replaced with U+FFFD.
std::optional<RawRecord> ParseTweetLine(std::string_view line, const TweetFieldPaths& paths,
                                        std::string* error);

// Intermediate RawRecord stream: one JSON object per line with keys id,
// source, text and (tweets only) location.
std::string RawRecordToJsonLine(const RawRecord& record);
// Throws std::invalid_argument on malformed lines.
RawRecord RawRecordFromJsonLine(std::string_view line);

// Record ids end up in a tab-separated sidecar; tabs and line breaks are
// replaced by spaces.
std::string SanitizeId(std::string_view id);

inline std::string SidecarPath(const std::string& corpus_path) {
  return corpus_path + ".meta.tsv";
}

// Corpus file: one record text per line (LF). Sidecar: "id<TAB>source<TAB>
// line" for every line, line numbers 1-based within this corpus file.
class CorpusWriter {
 public:
  explicit CorpusWriter(const std::string& path, bool write_sidecar = true);
  void Write(const CleanRecord& record);
  void Close();
  uint64_t lines() const { return lines_; }

 private:
  std::string path_;
  std::ofstream text_;
  std::ofstream meta_;
  bool sidecar_;
  uint64_t lines_ = 0;
};

class CorpusReader {
 public:
  // Without a sidecar ids are the 1-based line numbers and the source is
  // `default_source`.
  explicit CorpusReader(const std::string& path, Source default_source = Source::kTweet);
  bool Next(CleanRecord* record);
  bool has_sidecar() const { return has_sidecar_; }
  uint64_t lines() const { return lines_; }

 private:
  std::string path_;
  std::ifstream text_;
  std::ifstream meta_;
  bool has_sidecar_ = false;
  Source default_source_;
  uint64_t lines_ = 0;
};

std::vector<CleanRecord> ReadCorpus(const std::string& path,
                                    Source default_source = Source::kTweet);
void WriteCorpus(const std::string& path, const std::vector<CleanRecord>& records);

// Number of lines in a corpus file.
uint64_t CountLines(const std::string& path);

// Regular files under root whose extension is .html or .htm
// (case-insensitive), sorted by path for deterministic order.
std::vector<std::string> ListHtmlFiles(const std::string& root);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view content);

}  // namespace egycorpus

#endif  // EGYCORPUS_CORPUS_IO_H_
