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

#include "egycorpus/record_clean.h"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "egycorpus/text_normalize.h"
#include "egycorpus/unicode.h"

namespace egycorpus {

using unicode::DecodeUtf8;

namespace {

char AsciiLower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; }

bool IsAsciiAlnum(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool IsAsciiAlpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool IsHex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

std::string LowerAscii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = AsciiLower(c);
  return out;
}

bool IsCleanDigit(char32_t cp) {
  return (cp >= '0' && cp <= '9') || (cp >= 0x0660 && cp <= 0x0669) ||
         (cp >= 0x06F0 && cp <= 0x06F9);
}

// Applies `rewrite` to every whitespace token. `rewrite` returns false to
// keep the token verbatim or true after filling `replacement` (empty means
// drop). Unchanged input is returned as-is.
template <class Rewrite>
std::string RewriteTokens(std::string_view text, Rewrite rewrite) {
  const std::vector<std::string_view> tokens = unicode::SplitWhitespace(text);
  std::vector<std::string> replaced(tokens.size());
  std::vector<bool> changed(tokens.size(), false);
  bool any = false;
  for (size_t k = 0; k < tokens.size(); ++k) {
    if (rewrite(tokens[k], &replaced[k])) {
      changed[k] = true;
      any = true;
    }
  }
  if (!any) return std::string(text);
  std::string out;
  out.reserve(text.size());
  for (size_t k = 0; k < tokens.size(); ++k) {
    const std::string_view piece =
        changed[k] ? std::string_view(replaced[k]) : tokens[k];
    if (piece.empty()) continue;
    if (!out.empty()) out.push_back(' ');
    out.append(piece);
  }
  return unicode::CollapseWhitespace(out);
}

template <class Step>
std::string Fixpoint(std::string_view text, Step step) {
  std::string current(text);
  for (;;) {
    std::string next = step(current);
    if (next == current) return current;
    current = std::move(next);
  }
}

constexpr std::array<std::string_view, 40> kBbcodeTags = {
    "b",     "i",      "u",      "s",       "url",    "img",    "quote",
    "color", "size",   "font",   "center",  "left",   "right",  "justify",
    "list",  "*",      "code",   "php",     "html",   "email",  "indent",
    "highlight", "youtube", "video", "media", "spoiler", "align", "table",
    "tr",    "td",     "th",     "hr",      "sub",    "sup",    "strike",
    "noparse", "attach", "mention", "user",  "frame"};

bool IsBbcodeTagName(std::string_view name) {
  const std::string lower = LowerAscii(name);
  return std::find(kBbcodeTags.begin(), kBbcodeTags.end(), lower) != kBbcodeTags.end();
}

// Length of a BBCode marker starting at text[pos] == '[', or 0.
size_t MatchBbcode(std::string_view text, size_t pos) {
  size_t i = pos + 1;
  if (i < text.size() && text[i] == '/') ++i;
  const size_t name_start = i;
  if (i < text.size() && text[i] == '*') {
    ++i;
  } else {
    if (i >= text.size() || !IsAsciiAlpha(text[i])) return 0;
    while (i < text.size() && IsAsciiAlnum(text[i])) ++i;
  }
  if (!IsBbcodeTagName(text.substr(name_start, i - name_start))) return 0;
  if (i < text.size() && text[i] == ']') return i + 1 - pos;
  if (i >= text.size() || (text[i] != '=' && text[i] != ' ')) return 0;
  if (text[name_start - 1] == '/') return 0;  // closing markers take no value
  for (++i; i < text.size(); ++i) {
    if (text[i] == ']') return i + 1 - pos;
    if (text[i] == '[' || text[i] == '\n') return 0;
  }
  return 0;
}

// Length of an HTML tag, comment or declaration starting at '<', or 0.
size_t MatchHtmlTag(std::string_view text, size_t pos) {
  size_t i = pos + 1;
  if (i >= text.size()) return 0;
  if (text[i] == '/') {
    ++i;
    if (i >= text.size() || !IsAsciiAlpha(text[i])) return 0;
  } else if (text[i] != '!' && text[i] != '?' && !IsAsciiAlpha(text[i])) {
    return 0;
  }
  for (; i < text.size(); ++i) {
    if (text[i] == '>') return i + 1 - pos;
    if (text[i] == '<' || text[i] == '\n') return 0;
  }
  return 0;
}

template <class Matcher>
std::string ReplaceMarkers(std::string_view text, char opener, Matcher match,
                           std::string_view replacement) {
  std::string out;
  bool changed = false;
  size_t copied = 0;
  for (size_t pos = text.find(opener); pos != std::string_view::npos;) {
    const size_t len = match(text, pos);
    if (len == 0) {
      pos = text.find(opener, pos + 1);
      continue;
    }
    if (!changed) out.reserve(text.size());
    changed = true;
    out.append(text.substr(copied, pos - copied));
    out.append(replacement);
    copied = pos + len;
    pos = text.find(opener, copied);
  }
  if (!changed) return std::string(text);
  out.append(text.substr(copied));
  return unicode::CollapseWhitespace(out);
}

}  // namespace

void CleanConfig::Validate() const {
  if (max_letter_run < 1) throw std::invalid_argument("max_letter_run must be >= 1");
  if (max_other_run < 1) throw std::invalid_argument("max_other_run must be >= 1");
  if (max_digit_run_kept < 1) {
    throw std::invalid_argument("max_digit_run_kept must be >= 1");
  }
  if (min_words < 1) throw std::invalid_argument("min_words must be >= 1");
  if (!(english_majority_threshold > 0.0 && english_majority_threshold <= 1.0)) {
    throw std::invalid_argument("english_majority_threshold must be in (0,1]");
  }
}

std::string_view DropReasonName(DropReason reason) {
  switch (reason) {
    case DropReason::kNone:
      return "none";
    case DropReason::kTooFewWords:
      return "too_few_words";
    case DropReason::kMajorityEnglish:
      return "majority_english";
  }
  return "unknown";
}

bool IsUrlToken(std::string_view token) {
  const std::string lower = LowerAscii(token);
  if (lower.find("http://") != std::string::npos ||
      lower.find("https://") != std::string::npos) {
    return true;
  }
  for (size_t p = lower.find("www."); p != std::string::npos;
       p = lower.find("www.", p + 1)) {
    if (p == 0 || !IsAsciiAlnum(lower[p - 1])) return true;
  }
  return false;
}

bool IsMentionToken(std::string_view token) {
  return token.size() > 1 && token[0] == '@';
}

bool IsHashtagToken(std::string_view token) {
  return token.size() > 1 && token[0] == '#' &&
         token.find_first_not_of('#') != std::string_view::npos;
}

bool IsEmailToken(std::string_view token) {
  const size_t at = token.find('@');
  if (at == std::string_view::npos || at == 0) return false;
  const std::string_view domain = token.substr(at + 1);
  const size_t dot = domain.find('.');
  return dot != std::string_view::npos && dot > 0 && dot + 1 < domain.size();
}

std::string RemoveUrlsMentionsHashtags(std::string_view text, bool keep_hashtag_body) {
  return RewriteTokens(text, [&](std::string_view tok, std::string* out) {
    if (IsUrlToken(tok) || IsMentionToken(tok)) {
      out->clear();
      return true;
    }
    if (IsHashtagToken(tok)) {
      *out = keep_hashtag_body ? std::string(tok.substr(tok.find_first_not_of('#')))
                               : std::string();
      return true;
    }
    return false;
  });
}

std::string RemoveUrls(std::string_view text) {
  return RewriteTokens(text, [](std::string_view tok, std::string* out) {
    if (!IsUrlToken(tok)) return false;
    out->clear();
    return true;
  });
}

std::string RemoveEmails(std::string_view text) {
  return RewriteTokens(text, [](std::string_view tok, std::string* out) {
    if (!IsEmailToken(tok)) return false;
    out->clear();
    return true;
  });
}

std::string RemoveLargeNumbers(std::string_view text, int max_kept) {
  std::string out;
  bool changed = false;
  size_t i = 0;
  size_t run_start = 0;
  int run_len = 0;
  auto flush_run = [&](size_t run_end) {
    if (run_len > max_kept) {
      changed = true;
    } else {
      out.append(text.substr(run_start, run_end - run_start));
    }
    run_len = 0;
  };
  out.reserve(text.size());
  while (i < text.size()) {
    const size_t start = i;
    const char32_t cp = DecodeUtf8(text, &i);
    if (IsCleanDigit(cp)) {
      if (run_len == 0) run_start = start;
      ++run_len;
      continue;
    }
    if (run_len > 0) flush_run(start);
    out.append(text.substr(start, i - start));
  }
  if (run_len > 0) flush_run(text.size());
  if (!changed) return std::string(text);
  return unicode::CollapseWhitespace(out);
}

std::string LimitLetterRepetition(std::string_view text, int max_run) {
  return CollapseLetterRuns(text, max_run);
}

std::string LimitCharRepetition(std::string_view text, int max_run) {
  std::string out;
  out.reserve(text.size());
  std::string_view prev;
  int run = 0;
  for (std::string_view cluster : unicode::Graphemes(text)) {
    size_t i = 0;
    const char32_t base = DecodeUtf8(cluster, &i);
    if (unicode::IsLetter(base) || unicode::IsDecimalDigit(base)) {
      prev = {};
      run = 0;
      out.append(cluster);
      continue;
    }
    run = (!prev.empty() && cluster == prev) ? run + 1 : 1;
    prev = cluster;
    if (run <= max_run) out.append(cluster);
  }
  return out;
}

std::string RemoveBbcode(std::string_view text) {
  return Fixpoint(text, [](std::string_view s) {
    return ReplaceMarkers(s, '[', MatchBbcode, " ");
  });
}

std::string RemoveHtmlTags(std::string_view text) {
  return Fixpoint(text, [](std::string_view s) {
    return ReplaceMarkers(s, '<', MatchHtmlTag, " ");
  });
}

std::string RemovePercentEncoded(std::string_view text) {
  return Fixpoint(text, [](std::string_view s) {
    return ReplaceMarkers(
        s, '%',
        [](std::string_view t, size_t pos) -> size_t {
          return (pos + 2 < t.size() && IsHex(t[pos + 1]) && IsHex(t[pos + 2])) ? 3 : 0;
        },
        "");
  });
}

std::string RemoveNewlinesAndWhitespace(std::string_view text) {
  return unicode::CollapseWhitespace(text);
}

int WordCount(std::string_view text) {
  int count = 0;
  bool in_word = false;
  size_t i = 0;
  while (i < text.size()) {
    const char32_t cp = DecodeUtf8(text, &i);
    const bool ws = unicode::IsWhitespace(cp);
    if (!ws && !in_word) ++count;
    in_word = !ws;
  }
  return count;
}

bool IsMajorityEnglish(std::string_view text, double threshold) {
  int total = 0;
  int english = 0;
  for (std::string_view token : unicode::SplitWhitespace(text)) {
    ++total;
    int alpha = 0;
    int latin = 0;
    size_t i = 0;
    while (i < token.size()) {
      const char32_t cp = DecodeUtf8(token, &i);
      if (!unicode::IsLetter(cp)) continue;
      ++alpha;
      if (cp < 0x80) ++latin;
    }
    if (2 * latin > alpha) ++english;
  }
  if (total == 0) return false;
  return static_cast<double>(english) > threshold * static_cast<double>(total);
}

std::string TweetChainOnce(std::string_view text, const CleanConfig& cfg) {
  std::string s = RemoveUrlsMentionsHashtags(text, cfg.keep_hashtag_body);
  s = RemoveNewlinesAndWhitespace(s);
  s = RemoveLargeNumbers(s, cfg.max_digit_run_kept);
  s = LimitLetterRepetition(s, cfg.max_letter_run);
  s = LimitCharRepetition(s, cfg.max_other_run);
  return s;
}

std::string ForumChainOnce(std::string_view text, const CleanConfig& cfg) {
  std::string s = RemoveUrls(text);
  s = RemoveEmails(s);
  s = RemoveNewlinesAndWhitespace(s);
  s = RemoveLargeNumbers(s, cfg.max_digit_run_kept);
  s = LimitLetterRepetition(s, cfg.max_letter_run);
  s = LimitCharRepetition(s, cfg.max_other_run);
  s = RemoveBbcode(s);
  s = RemoveHtmlTags(s);
  s = RemovePercentEncoded(s);
  return s;
}

std::string CleanTweetText(std::string_view text, const CleanConfig& cfg) {
  return Fixpoint(text, [&](std::string_view s) { return TweetChainOnce(s, cfg); });
}

std::string CleanForumText(std::string_view text, const CleanConfig& cfg) {
  return Fixpoint(text, [&](std::string_view s) { return ForumChainOnce(s, cfg); });
}

DropReason FilterReason(std::string_view cleaned, const CleanConfig& cfg) {
  if (WordCount(cleaned) < cfg.min_words) return DropReason::kTooFewWords;
  if (IsMajorityEnglish(cleaned, cfg.english_majority_threshold)) {
    return DropReason::kMajorityEnglish;
  }
  return DropReason::kNone;
}

namespace {

std::optional<CleanRecord> Finish(const RawRecord& raw, std::string text,
                                  const CleanConfig& cfg, DropReason* reason) {
  const DropReason why = FilterReason(text, cfg);
  if (reason != nullptr) *reason = why;
  if (why != DropReason::kNone) return std::nullopt;
  return CleanRecord{raw.id, std::move(text), raw.source};
}

}  // namespace

std::optional<CleanRecord> CleanTweet(const RawRecord& raw, const CleanConfig& cfg,
                                      DropReason* reason) {
  if (raw.source != Source::kTweet) {
    throw std::invalid_argument("CleanTweet: record " + raw.id + " is not a tweet");
  }
  return Finish(raw, CleanTweetText(raw.text, cfg), cfg, reason);
}

std::optional<CleanRecord> CleanForum(const RawRecord& raw, const CleanConfig& cfg,
                                      DropReason* reason) {
  if (raw.source != Source::kForum) {
    throw std::invalid_argument("CleanForum: record " + raw.id + " is not a forum post");
  }
  return Finish(raw, CleanForumText(raw.text, cfg), cfg, reason);
}

std::optional<CleanRecord> CleanBySource(const RawRecord& raw, const CleanConfig& cfg,
                                         DropReason* reason) {
  return raw.source == Source::kTweet ? CleanTweet(raw, cfg, reason)
                                      : CleanForum(raw, cfg, reason);
}

std::string ValidateCleanRecord(const CleanRecord& record, const CleanConfig& cfg) {
  const std::string& t = record.text;
  if (!unicode::IsValidUtf8(t)) return "text is not valid UTF-8";
  if (t.find_first_of("\n\r\t") != std::string::npos) return "text contains a line break or tab";
  if (WordCount(t) < cfg.min_words) return "fewer than min_words words";
  if (IsMajorityEnglish(t, cfg.english_majority_threshold)) return "majority English";
  for (std::string_view tok : unicode::SplitWhitespace(t)) {
    if (IsUrlToken(tok)) return "contains URL token '" + std::string(tok) + "'";
    // Forum cleaning has no mention step, so the mention rule is tweet-only.
    if (record.source == Source::kTweet && IsMentionToken(tok)) {
      return "contains mention token '" + std::string(tok) + "'";
    }
  }
  return {};
}

std::string_view SourceName(Source source) {
  return source == Source::kTweet ? "tweet" : "forum";
}

std::optional<Source> ParseSource(std::string_view name) {
  if (name == "tweet") return Source::kTweet;
  if (name == "forum") return Source::kForum;
  return std::nullopt;
}

}  // namespace egycorpus
