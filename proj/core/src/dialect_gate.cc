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

#include "egycorpus/dialect_gate.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "egycorpus/unicode.h"

namespace egycorpus {

std::string LocationKey(std::string_view text, const NormalizationProfile& profile) {
  return Normalize(unicode::FoldLatinCase(Normalize(text, profile)), profile);
}

TermList TermList::Build(std::string name, const std::vector<std::string>& raw_terms,
                         const NormalizationProfile& profile) {
  TermList list;
  list.name_ = std::move(name);
  for (const std::string& raw : raw_terms) {
    std::string key = LocationKey(raw, profile);
    if (key.empty()) continue;
    if (std::find(list.terms_.begin(), list.terms_.end(), key) != list.terms_.end()) {
      continue;
    }
    list.terms_.push_back(std::move(key));
  }
  return list;
}

TermList TermList::Parse(std::string name, std::string_view content,
                         const NormalizationProfile& profile) {
  std::vector<std::string> raw;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string trimmed = unicode::CollapseWhitespace(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    raw.push_back(unicode::SanitizeUtf8(trimmed));
  }
  return Build(std::move(name), raw, profile);
}

TermList TermList::Load(const std::string& path, const NormalizationProfile& profile) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open term list: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string name = path;
  if (const size_t slash = name.find_last_of('/'); slash != std::string::npos) {
    name = name.substr(slash + 1);
  }
  if (const size_t dot = name.rfind('.'); dot != std::string::npos && dot > 0) {
    name = name.substr(0, dot);
  }
  return Parse(std::move(name), buf.str(), profile);
}

bool MatchLocation(std::string_view location_raw, const TermList& terms,
                   const NormalizationProfile& profile) {
  if (location_raw.empty() || terms.empty()) return false;
  const std::string key = LocationKey(location_raw, profile);
  if (key.empty()) return false;
  return std::any_of(terms.terms().begin(), terms.terms().end(),
                     [&](const std::string& term) {
                       return key.find(term) != std::string::npos;
                     });
}

}  // namespace egycorpus
