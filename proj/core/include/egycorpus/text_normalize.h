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

#ifndef EGYCORPUS_TEXT_NORMALIZE_H_
#define EGYCORPUS_TEXT_NORMALIZE_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace egycorpus {

// Code point substitution table used for Arabic letter unification. Entries
// are kept sorted by source; no target may itself be a source, which keeps
// the mapping idempotent.
class LetterMap {
 public:
  LetterMap() = default;
  explicit LetterMap(std::vector<std::pair<char32_t, char32_t>> entries);

  // Alef variants to bare alef, alef maksura to ya.
  static LetterMap Default();

  // Parses the tab-separated table format of data/arabic_letter_map.tsv:
  // "U+0623<TAB>U+0627" with '#' comments. Throws std::runtime_error.
  static LetterMap Parse(std::string_view content);
  static LetterMap Load(const std::string& path);

  LetterMap WithTaMarbuta() const;  // adds U+0629 -> U+0647

  char32_t Map(char32_t cp) const;
  const std::vector<std::pair<char32_t, char32_t>>& entries() const {
    return entries_;
  }
  bool operator==(const LetterMap&) const = default;

 private:
  std::vector<std::pair<char32_t, char32_t>> entries_;
};

// Which character classes normalize() rewrites or removes. Steps run in a
// fixed order: letter unification, diacritic strip, tatweel strip, Latin
// accent fold, symbol/emoji strip, letter-run collapse, whitespace collapse.
struct NormalizationProfile {
  bool unify_arabic_letters = false;
  bool strip_diacritics = false;
  bool strip_tatweel = false;
  bool fold_latin_accents = false;
  bool strip_symbols_punct = false;
  bool strip_emoji = false;
  bool collapse_whitespace = false;
  // Cap on consecutive identical letters; nullopt leaves runs alone.
  std::optional<int> collapse_letter_runs;
  // Grapheme clusters that symbol/emoji stripping never removes.
  std::vector<std::string> emoji_allowlist;
  LetterMap letter_map = LetterMap::Default();

  // Everything off: Normalize() is the identity.
  static NormalizationProfile Identity() { return {}; }

  // Profile applied to the tweet "location" field before term matching.
  static NormalizationProfile Location();

  bool IsAllowlisted(std::string_view cluster) const;
};

inline const std::string kEgyptFlag = "\U0001F1EA\U0001F1EC";

std::string Normalize(std::string_view text, const NormalizationProfile& profile);

// Individual steps, exposed for testing and reuse. Each one is idempotent.
std::string UnifyArabicLetters(std::string_view text, const LetterMap& map);
std::string StripArabicDiacritics(std::string_view text);
std::string StripTatweel(std::string_view text);
std::string FoldLatinAccents(std::string_view text);
std::string StripSymbolsAndEmoji(std::string_view text, bool symbols,
                                 bool emoji,
                                 const std::vector<std::string>& allowlist);
std::string CollapseLetterRuns(std::string_view text, int max_run);

bool IsArabicDiacritic(char32_t cp);
inline constexpr char32_t kTatweel = 0x0640;

}  // namespace egycorpus

#endif  // EGYCORPUS_TEXT_NORMALIZE_H_
