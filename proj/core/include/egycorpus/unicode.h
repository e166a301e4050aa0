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

#ifndef EGYCORPUS_UNICODE_H_
#define EGYCORPUS_UNICODE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Low-level UTF-8 and Unicode property helpers shared by the text modules.
// Every function here expects valid UTF-8 unless noted otherwise; invalid
// input should go through SanitizeUtf8 at the ingestion boundary.

namespace egycorpus::unicode {

inline constexpr char32_t kReplacementChar = 0xFFFD;

// Decodes the code point starting at s[*pos] and advances *pos. Invalid or
// truncated sequences decode to U+FFFD and consume one byte.
char32_t DecodeUtf8(std::string_view s, size_t* pos);

void AppendUtf8(char32_t cp, std::string* out);
std::string EncodeUtf8(char32_t cp);

bool IsValidUtf8(std::string_view s);

// Replaces every invalid byte sequence with U+FFFD.
std::string SanitizeUtf8(std::string_view s);

std::u32string ToCodePoints(std::string_view s);
std::string FromCodePoints(std::u32string_view cps);

// Byte offsets of extended grapheme cluster boundaries, always starting
// with 0 and ending with s.size().
std::vector<size_t> GraphemeBoundaries(std::string_view s);

// Splits into extended grapheme clusters (views into s).
std::vector<std::string_view> Graphemes(std::string_view s);

bool IsWhitespace(char32_t cp);
bool IsLetter(char32_t cp);          // general category L*
bool IsMark(char32_t cp);            // general category M*
bool IsDecimalDigit(char32_t cp);    // general category Nd
bool IsSymbolOrPunct(char32_t cp);   // general category P* or S*
bool IsLatinScript(char32_t cp);
bool IsRegionalIndicator(char32_t cp);

// True for clusters rendered as emoji: pictographs, flags (a regional
// indicator pair), keycaps, modifier sequences and ZWJ sequences. A lone
// regional indicator is not an emoji cluster.
bool IsEmojiCluster(std::string_view cluster);

// True when the cluster is a single unpaired regional indicator.
bool IsLoneRegionalIndicator(std::string_view cluster);

// Replaces every run of Unicode whitespace with one ASCII space and trims
// both ends.
std::string CollapseWhitespace(std::string_view s);

// Simple case folding applied to Latin-script code points only.
std::string FoldLatinCase(std::string_view s);

// Splits on Unicode whitespace, dropping empty tokens.
std::vector<std::string_view> SplitWhitespace(std::string_view s);

}  // namespace egycorpus::unicode

#endif  // EGYCORPUS_UNICODE_H_
