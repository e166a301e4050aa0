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

#include "egycorpus/text_normalize.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include "egycorpus/unicode.h"

namespace egycorpus {

using unicode::AppendUtf8;
using unicode::DecodeUtf8;

namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

char32_t ParseCodePoint(std::string_view field, int line) {
  field = Trim(field);
  if (field.size() > 2 && (field[0] == 'U' || field[0] == 'u') && field[1] == '+') {
    field.remove_prefix(2);
    try {
      size_t used = 0;
      const unsigned long v = std::stoul(std::string(field), &used, 16);
      if (used == field.size() && v <= 0x10FFFF) return static_cast<char32_t>(v);
    } catch (const std::exception&) {
    }
  } else {
    // A literal single character is accepted too.
    size_t pos = 0;
    const std::string literal(field);
    if (!literal.empty()) {
      const char32_t cp = DecodeUtf8(literal, &pos);
      if (pos == literal.size()) return cp;
    }
  }
  throw std::runtime_error("letter map line " + std::to_string(line) +
                           ": bad code point '" + std::string(field) + "'");
}

template <class Keep>
std::string FilterCodePoints(std::string_view text, Keep keep) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    const size_t start = i;
    const char32_t cp = DecodeUtf8(text, &i);
    if (keep(cp)) out.append(text.substr(start, i - start));
  }
  return out;
}

}  // namespace

LetterMap::LetterMap(std::vector<std::pair<char32_t, char32_t>> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  for (size_t k = 1; k < entries_.size(); ++k) {
    if (entries_[k].first == entries_[k - 1].first) {
      throw std::runtime_error("letter map: duplicate source U+" +
                               std::to_string(entries_[k].first));
    }
  }
  for (const auto& [from, to] : entries_) {
    if (Map(to) != to) {
      throw std::runtime_error(
          "letter map: target is also a source (mapping would not be "
          "idempotent)");
    }
  }
}

LetterMap LetterMap::Default() {
  return LetterMap({
      {0x0622, 0x0627},  // alef with madda above
      {0x0623, 0x0627},  // alef with hamza above
      {0x0625, 0x0627},  // alef with hamza below
      {0x0671, 0x0627},  // alef wasla
      {0x0672, 0x0627},  // alef with wavy hamza above
      {0x0673, 0x0627},  // alef with wavy hamza below
      {0x0649, 0x064A},  // alef maksura -> ya
      {0x06CC, 0x064A},  // farsi yeh -> ya
      {0x06A9, 0x0643},  // keheh -> kaf
  });
}

LetterMap LetterMap::Parse(std::string_view content) {
  std::vector<std::pair<char32_t, char32_t>> entries;
  std::istringstream in{std::string(content)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const size_t hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = Trim(view);
    if (view.empty()) continue;
    const size_t tab = view.find('\t');
    if (tab == std::string_view::npos) {
      throw std::runtime_error("letter map line " + std::to_string(line_no) +
                               ": expected two tab-separated fields");
    }
    entries.emplace_back(ParseCodePoint(view.substr(0, tab), line_no),
                         ParseCodePoint(view.substr(tab + 1), line_no));
  }
  return LetterMap(std::move(entries));
}

LetterMap LetterMap::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open letter map: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str());
}

LetterMap LetterMap::WithTaMarbuta() const {
  auto entries = entries_;
  entries.emplace_back(0x0629, 0x0647);
  return LetterMap(std::move(entries));
}

char32_t LetterMap::Map(char32_t cp) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), cp,
      [](const std::pair<char32_t, char32_t>& e, char32_t v) { return e.first < v; });
  if (it != entries_.end() && it->first == cp) return it->second;
  return cp;
}

NormalizationProfile NormalizationProfile::Location() {
  NormalizationProfile p;
  p.unify_arabic_letters = true;
  p.strip_diacritics = true;
  p.strip_tatweel = true;
  p.fold_latin_accents = true;
  p.strip_symbols_punct = true;
  p.strip_emoji = true;
  p.collapse_whitespace = true;
  p.collapse_letter_runs = 1;
  p.emoji_allowlist = {kEgyptFlag};
  return p;
}

bool NormalizationProfile::IsAllowlisted(std::string_view cluster) const {
  return std::find(emoji_allowlist.begin(), emoji_allowlist.end(), cluster) !=
         emoji_allowlist.end();
}

bool IsArabicDiacritic(char32_t cp) {
  const bool in_range = (cp >= 0x0610 && cp <= 0x061A) ||
                        (cp >= 0x064B && cp <= 0x065F) || cp == 0x0670 ||
                        (cp >= 0x06D6 && cp <= 0x06ED);
  return in_range && unicode::IsMark(cp);
}

std::string UnifyArabicLetters(std::string_view text, const LetterMap& map) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    const size_t start = i;
    const char32_t cp = DecodeUtf8(text, &i);
    const char32_t mapped = cp < 0x80 ? cp : map.Map(cp);
    if (mapped == cp) {
      out.append(text.substr(start, i - start));
    } else {
      AppendUtf8(mapped, &out);
    }
  }
  return out;
}

std::string StripArabicDiacritics(std::string_view text) {
  return FilterCodePoints(text, [](char32_t cp) { return !IsArabicDiacritic(cp); });
}

std::string StripTatweel(std::string_view text) {
  return FilterCodePoints(text, [](char32_t cp) { return cp != kTatweel; });
}

std::string FoldLatinAccents(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfd = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFD unavailable");

  std::string out;
  out.reserve(text.size());
  for (std::string_view cluster : unicode::Graphemes(text)) {
    size_t i = 0;
    const char32_t base = DecodeUtf8(cluster, &i);
    const bool ascii = cluster.size() == 1;
    if (ascii || !unicode::IsLatinScript(base)) {
      out.append(cluster);
      continue;
    }
    icu::UnicodeString decomposed;
    nfd->normalize(icu::UnicodeString::fromUTF8(
                       icu::StringPiece(cluster.data(),
                                        static_cast<int32_t>(cluster.size()))),
                   decomposed, status);
    if (U_FAILURE(status)) throw std::runtime_error("NFD failed");
    for (int32_t k = 0; k < decomposed.length();) {
      const UChar32 cp = decomposed.char32At(k);
      k += U16_LENGTH(cp);
      if (!unicode::IsMark(static_cast<char32_t>(cp))) {
        AppendUtf8(static_cast<char32_t>(cp), &out);
      }
    }
  }
  return out;
}

namespace {

std::optional<std::string_view> AllowlistedPrefix(std::string_view cluster,
                                                  const std::vector<std::string>& allowlist) {
  for (const std::string& entry : allowlist) {
    if (entry.empty() || cluster.substr(0, entry.size()) != entry) continue;
    bool only_marks = true;
    for (size_t i = entry.size(); i < cluster.size() && only_marks;) {
      const char32_t cp = DecodeUtf8(cluster, &i);
      only_marks = unicode::IsMark(cp);
    }
    if (only_marks) return cluster.substr(0, entry.size());
  }
  return std::nullopt;
}

std::string DropLoneRegionalIndicators(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::string_view cluster : unicode::Graphemes(text)) {
    if (!unicode::IsLoneRegionalIndicator(cluster)) out.append(cluster);
  }
  return out;
}

}  // namespace

std::string StripSymbolsAndEmoji(std::string_view text, bool symbols, bool emoji,
                                 const std::vector<std::string>& allowlist) {
  if (!symbols && !emoji) return std::string(text);
  std::string out;
  out.reserve(text.size());
  for (std::string_view cluster : unicode::Graphemes(text)) {
    // Marks that attach to an allowlisted cluster (a variation selector, or
    // a combining mark left behind by earlier steps) are dropped with it kept.
    if (const auto kept = AllowlistedPrefix(cluster, allowlist)) {
      out.append(*kept);
      continue;
    }
    // An unpaired regional indicator goes under either switch, otherwise
    // removing its neighbour could pair it into a new flag.
    if (unicode::IsLoneRegionalIndicator(cluster)) continue;
    if (unicode::IsEmojiCluster(cluster)) {
      if (!emoji) out.append(cluster);
      continue;
    }
    if (symbols) {
      size_t i = 0;
      const char32_t base = DecodeUtf8(cluster, &i);
      if (unicode::IsSymbolOrPunct(base)) continue;
    }
    out.append(cluster);
  }
  return out;
}

std::string CollapseLetterRuns(std::string_view text, int max_run) {
  std::string out;
  out.reserve(text.size());
  char32_t prev = 0;
  int run = 0;
  size_t i = 0;
  while (i < text.size()) {
    const size_t start = i;
    const char32_t cp = DecodeUtf8(text, &i);
    if (unicode::IsLetter(cp)) {
      run = (cp == prev) ? run + 1 : 1;
      prev = cp;
      if (run > max_run) continue;
    } else {
      prev = 0;
      run = 0;
    }
    out.append(text.substr(start, i - start));
  }
  return out;
}

std::string Normalize(std::string_view text, const NormalizationProfile& profile) {
  std::string s(text);
  // Any deleting step can make a half flag adjacent to a real one and pair
  // them, so unpaired regional indicators go first.
  if (profile.strip_diacritics || profile.strip_tatweel || profile.fold_latin_accents ||
      profile.strip_symbols_punct || profile.strip_emoji) {
    s = DropLoneRegionalIndicators(s);
  }
  if (profile.unify_arabic_letters) s = UnifyArabicLetters(s, profile.letter_map);
  if (profile.strip_diacritics) s = StripArabicDiacritics(s);
  if (profile.strip_tatweel) s = StripTatweel(s);
  if (profile.fold_latin_accents) s = FoldLatinAccents(s);
  if (profile.strip_symbols_punct || profile.strip_emoji) {
    s = StripSymbolsAndEmoji(s, profile.strip_symbols_punct, profile.strip_emoji,
                             profile.emoji_allowlist);
  }
  if (profile.collapse_letter_runs) s = CollapseLetterRuns(s, *profile.collapse_letter_runs);
  if (profile.collapse_whitespace) s = unicode::CollapseWhitespace(s);
  return s;
}

}  // namespace egycorpus
