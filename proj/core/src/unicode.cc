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

#include "egycorpus/unicode.h"

#include <memory>
#include <stdexcept>

#include <unicode/brkiter.h>
#include <unicode/uchar.h>
#include <unicode/uscript.h>
#include <unicode/utext.h>

namespace egycorpus::unicode {
namespace {

bool IsContinuation(unsigned char c) { return (c & 0xC0) == 0x80; }

bool IsAscii(std::string_view s) {
  for (unsigned char c : s) {
    if (c >= 0x80) return false;
  }
  return true;
}

// One character break iterator per thread; ICU iterators are not
// thread-safe but are cheap to reuse with setText.
icu::BreakIterator& ThreadCharacterIterator() {
  thread_local std::unique_ptr<icu::BreakIterator> iter = [] {
    UErrorCode status = U_ZERO_ERROR;
    std::unique_ptr<icu::BreakIterator> it(
        icu::BreakIterator::createCharacterInstance(icu::Locale::getRoot(),
                                                    status));
    if (U_FAILURE(status) || !it) {
      throw std::runtime_error("cannot create ICU character break iterator");
    }
    return it;
  }();
  return *iter;
}

}  // namespace

char32_t DecodeUtf8(std::string_view s, size_t* pos) {
  const size_t i = *pos;
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    *pos = i + 1;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2, cp = b0 & 0x1F, min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3, cp = b0 & 0x0F, min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4, cp = b0 & 0x07, min = 0x10000;
  } else {
    *pos = i + 1;
    return kReplacementChar;
  }
  if (i + len > s.size()) {
    *pos = i + 1;
    return kReplacementChar;
  }
  for (int k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if (!IsContinuation(b)) {
      *pos = i + 1;
      return kReplacementChar;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    *pos = i + 1;
    return kReplacementChar;
  }
  *pos = i + len;
  return cp;
}

void AppendUtf8(char32_t cp, std::string* out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string EncodeUtf8(char32_t cp) {
  std::string out;
  AppendUtf8(cp, &out);
  return out;
}

bool IsValidUtf8(std::string_view s) {
  size_t i = 0;
  while (i < s.size()) {
    const size_t start = i;
    const char32_t cp = DecodeUtf8(s, &i);
    if (cp == kReplacementChar &&
        s.substr(start, i - start) != "\xEF\xBF\xBD") {
      return false;
    }
  }
  return true;
}

std::string SanitizeUtf8(std::string_view s) {
  if (IsAscii(s)) return std::string(s);
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    const size_t start = i;
    const char32_t cp = DecodeUtf8(s, &i);
    if (cp == kReplacementChar) {
      AppendUtf8(cp, &out);
    } else {
      out.append(s.substr(start, i - start));
    }
  }
  return out;
}

std::u32string ToCodePoints(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) out.push_back(DecodeUtf8(s, &i));
  return out;
}

std::string FromCodePoints(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) AppendUtf8(cp, &out);
  return out;
}

std::vector<size_t> GraphemeBoundaries(std::string_view s) {
  std::vector<size_t> bounds;
  bounds.reserve(s.size() + 1);
  bounds.push_back(0);
  if (s.empty()) return bounds;
  if (IsAscii(s)) {
    // Only CR LF joins in pure ASCII text.
    for (size_t i = 1; i < s.size(); ++i) {
      if (!(s[i - 1] == '\r' && s[i] == '\n')) bounds.push_back(i);
    }
    bounds.push_back(s.size());
    return bounds;
  }
  UErrorCode status = U_ZERO_ERROR;
  UText* text = utext_openUTF8(nullptr, s.data(),
                               static_cast<int64_t>(s.size()), &status);
  if (U_FAILURE(status)) throw std::runtime_error("utext_openUTF8 failed");
  icu::BreakIterator& iter = ThreadCharacterIterator();
  iter.setText(text, status);
  if (U_FAILURE(status)) {
    utext_close(text);
    throw std::runtime_error("BreakIterator::setText failed");
  }
  for (int32_t b = iter.next(); b != icu::BreakIterator::DONE;
       b = iter.next()) {
    bounds.push_back(static_cast<size_t>(b));
  }
  utext_close(text);
  if (bounds.back() != s.size()) bounds.push_back(s.size());
  return bounds;
}

std::vector<std::string_view> Graphemes(std::string_view s) {
  const std::vector<size_t> bounds = GraphemeBoundaries(s);
  std::vector<std::string_view> out;
  out.reserve(bounds.size());
  for (size_t k = 1; k < bounds.size(); ++k) {
    out.push_back(s.substr(bounds[k - 1], bounds[k] - bounds[k - 1]));
  }
  return out;
}

bool IsWhitespace(char32_t cp) {
  if (cp < 0x80) {
    return cp == ' ' || (cp >= 0x09 && cp <= 0x0D);
  }
  return u_isUWhiteSpace(static_cast<UChar32>(cp));
}

bool IsLetter(char32_t cp) {
  if (cp < 0x80) return (cp | 0x20) >= 'a' && (cp | 0x20) <= 'z';
  return (U_GET_GC_MASK(static_cast<UChar32>(cp)) & U_GC_L_MASK) != 0;
}

bool IsMark(char32_t cp) {
  return (U_GET_GC_MASK(static_cast<UChar32>(cp)) & U_GC_M_MASK) != 0;
}

bool IsDecimalDigit(char32_t cp) {
  if (cp < 0x80) return cp >= '0' && cp <= '9';
  return u_charType(static_cast<UChar32>(cp)) == U_DECIMAL_DIGIT_NUMBER;
}

bool IsSymbolOrPunct(char32_t cp) {
  return (U_GET_GC_MASK(static_cast<UChar32>(cp)) &
          (U_GC_P_MASK | U_GC_S_MASK)) != 0;
}

bool IsLatinScript(char32_t cp) {
  if (cp < 0x80) return IsLetter(cp);
  UErrorCode status = U_ZERO_ERROR;
  return uscript_getScript(static_cast<UChar32>(cp), &status) ==
             USCRIPT_LATIN &&
         U_SUCCESS(status);
}

bool IsRegionalIndicator(char32_t cp) { return cp >= 0x1F1E6 && cp <= 0x1F1FF; }

bool IsLoneRegionalIndicator(std::string_view cluster) {
  size_t i = 0;
  if (cluster.empty()) return false;
  const char32_t first = DecodeUtf8(cluster, &i);
  if (!IsRegionalIndicator(first)) return false;
  while (i < cluster.size()) {
    if (IsRegionalIndicator(DecodeUtf8(cluster, &i))) return false;
  }
  return true;
}

bool IsEmojiCluster(std::string_view cluster) {
  if (cluster.empty()) return false;
  if (static_cast<unsigned char>(cluster[0]) < 0x80 && cluster.size() == 1) {
    return false;
  }
  size_t i = 0;
  const char32_t base = DecodeUtf8(cluster, &i);
  const auto ubase = static_cast<UChar32>(base);
  if (IsRegionalIndicator(base)) return !IsLoneRegionalIndicator(cluster);
  if (u_hasBinaryProperty(ubase, UCHAR_EXTENDED_PICTOGRAPHIC) ||
      u_hasBinaryProperty(ubase, UCHAR_EMOJI_PRESENTATION)) {
    return true;
  }
  const bool emoji_base = u_hasBinaryProperty(ubase, UCHAR_EMOJI);
  while (i < cluster.size()) {
    const char32_t cp = DecodeUtf8(cluster, &i);
    if (cp == 0x20E3) return true;  // combining enclosing keycap
    if (cp == 0xFE0F && emoji_base) return true;
    if (u_hasBinaryProperty(static_cast<UChar32>(cp),
                            UCHAR_EXTENDED_PICTOGRAPHIC)) {
      return true;
    }
  }
  return false;
}

std::string CollapseWhitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  size_t i = 0;
  while (i < s.size()) {
    const size_t start = i;
    const char32_t cp = DecodeUtf8(s, &i);
    if (IsWhitespace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.append(s.substr(start, i - start));
  }
  return out;
}

std::string FoldLatinCase(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    const size_t start = i;
    const char32_t cp = DecodeUtf8(s, &i);
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp >= 'A' && cp <= 'Z' ? cp + 32 : cp));
    } else if (IsLatinScript(cp)) {
      AppendUtf8(static_cast<char32_t>(u_foldCase(static_cast<UChar32>(cp),
                                                  U_FOLD_CASE_DEFAULT)),
                 &out);
    } else {
      out.append(s.substr(start, i - start));
    }
  }
  return out;
}

std::vector<std::string_view> SplitWhitespace(std::string_view s) {
  std::vector<std::string_view> tokens;
  size_t i = 0;
  size_t token_start = std::string_view::npos;
  while (i < s.size()) {
    const size_t start = i;
    const char32_t cp = DecodeUtf8(s, &i);
    if (IsWhitespace(cp)) {
      if (token_start != std::string_view::npos) {
        tokens.push_back(s.substr(token_start, start - token_start));
        token_start = std::string_view::npos;
      }
    } else if (token_start == std::string_view::npos) {
      token_start = start;
    }
  }
  if (token_start != std::string_view::npos) {
    tokens.push_back(s.substr(token_start));
  }
  return tokens;
}

}  // namespace egycorpus::unicode
