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

#ifndef EGYCORPUS_DIALECT_GATE_H_
#define EGYCORPUS_DIALECT_GATE_H_

#include <string>
#include <string_view>
#include <vector>

#include "egycorpus/text_normalize.h"

namespace egycorpus {

// Matching key of a location string: normalize, fold Latin case, normalize
// again (case folding can create new letter runs). Key(Key(x)) == Key(x).
std::string LocationKey(std::string_view text, const NormalizationProfile& profile);

// Ordered, duplicate-free set of location terms stored as matching keys.
class TermList {
 public:
  // Normalizes every raw term; empty-after-normalization terms and
  // duplicates are dropped, first occurrence wins.
  static TermList Build(std::string name, const std::vector<std::string>& raw_terms,
                        const NormalizationProfile& profile);

  // One term per line, '#' starts a comment line, blank lines ignored.
  static TermList Parse(std::string name, std::string_view content,
                        const NormalizationProfile& profile);
  static TermList Load(const std::string& path, const NormalizationProfile& profile);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

 private:
  std::string name_;
  std::vector<std::string> terms_;
};

// True iff the location key contains at least one term as a substring.
bool MatchLocation(std::string_view location_raw, const TermList& terms,
                   const NormalizationProfile& profile);

}  // namespace egycorpus

#endif  // EGYCORPUS_DIALECT_GATE_H_
