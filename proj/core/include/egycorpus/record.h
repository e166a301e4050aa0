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

#ifndef EGYCORPUS_RECORD_H_
#define EGYCORPUS_RECORD_H_

#include <optional>
#include <string>
#include <string_view>

namespace egycorpus {

enum class Source { kTweet, kForum };

std::string_view SourceName(Source source);
// Accepts "tweet" and "forum"; nullopt otherwise.
std::optional<Source> ParseSource(std::string_view name);

// An ingested unit before cleaning. Text may contain newlines.
struct RawRecord {
  std::string id;
  std::string text;
  Source source = Source::kTweet;
  std::optional<std::string> location;

  bool operator==(const RawRecord&) const = default;
};

// One cleaned corpus line.
struct CleanRecord {
  std::string id;
  std::string text;
  Source source = Source::kTweet;

  bool operator==(const CleanRecord&) const = default;
};

}  // namespace egycorpus

#endif  // EGYCORPUS_RECORD_H_
