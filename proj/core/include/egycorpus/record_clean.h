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

#ifndef EGYCORPUS_RECORD_CLEAN_H_
#define EGYCORPUS_RECORD_CLEAN_H_

#include <optional>
#include <string>
#include <string_view>

#include "egycorpus/record.h"

namespace egycorpus {

struct CleanConfig {
  int max_letter_run = 5;
  int max_other_run = 4;
  int max_digit_run_kept = 7;
  int min_words = 3;
  double english_majority_threshold = 0.5;
  // Strip only the leading '#' of hashtags instead of the whole token.
  bool keep_hashtag_body = false;

  // Throws std::invalid_argument naming the offending field.
  void Validate() const;
};

// Why clean_tweet / clean_forum rejected a record. The names double as the
// keys of dropped_by_reason in stats reports.
enum class DropReason {
  kNone,
  kTooFewWords,
  kMajorityEnglish,
};

std::string_view DropReasonName(DropReason reason);

// Whole-token removals. When anything is removed the result has its
// whitespace collapsed; otherwise the input is returned unchanged.
std::string RemoveUrlsMentionsHashtags(std::string_view text,
                                       bool keep_hashtag_body = false);
std::string RemoveUrls(std::string_view text);
std::string RemoveEmails(std::string_view text);

// Deletes maximal runs of more than max_kept digits (ASCII, Arabic-Indic and
// extended Arabic-Indic digits form one class).
std::string RemoveLargeNumbers(std::string_view text, int max_kept = 7);

// Truncates runs of one repeated letter code point to max_run.
std::string LimitLetterRepetition(std::string_view text, int max_run = 5);

// Truncates runs of one repeated non-letter, non-digit grapheme cluster to
// max_run. Digits are left to RemoveLargeNumbers.
std::string LimitCharRepetition(std::string_view text, int max_run = 4);

// Markup removals keep the enclosed text; removed markers become a space
// and the result is whitespace-collapsed when anything was removed.
std::string RemoveBbcode(std::string_view text);
std::string RemoveHtmlTags(std::string_view text);
std::string RemovePercentEncoded(std::string_view text);

// Newlines, tabs and whitespace runs to single spaces, trimmed.
std::string RemoveNewlinesAndWhitespace(std::string_view text);

int WordCount(std::string_view text);
bool IsMajorityEnglish(std::string_view text, double threshold = 0.5);

// The tweet and forum transform chains, applied in order until the text
// stops changing (a later step can expose work for an earlier one, e.g.
// removing [b] markers can join two letter runs).
std::string CleanTweetText(std::string_view text, const CleanConfig& cfg);
std::string CleanForumText(std::string_view text, const CleanConfig& cfg);

// One pass of each chain, exactly as the steps are listed.
std::string TweetChainOnce(std::string_view text, const CleanConfig& cfg);
std::string ForumChainOnce(std::string_view text, const CleanConfig& cfg);

// Min-words and majority-English filters shared by both pipelines.
DropReason FilterReason(std::string_view cleaned, const CleanConfig& cfg);

// Precondition: raw.source matches (std::invalid_argument otherwise).
std::optional<CleanRecord> CleanTweet(const RawRecord& raw, const CleanConfig& cfg,
                                      DropReason* reason = nullptr);
std::optional<CleanRecord> CleanForum(const RawRecord& raw, const CleanConfig& cfg,
                                      DropReason* reason = nullptr);

// Dispatches on raw.source.
std::optional<CleanRecord> CleanBySource(const RawRecord& raw, const CleanConfig& cfg,
                                         DropReason* reason = nullptr);

// Checks every CleanRecord invariant; returns an empty string when valid,
// otherwise a description of the first violation.
std::string ValidateCleanRecord(const CleanRecord& record, const CleanConfig& cfg);

// Token predicates used by the removal steps.
bool IsUrlToken(std::string_view token);
bool IsMentionToken(std::string_view token);
bool IsHashtagToken(std::string_view token);
bool IsEmailToken(std::string_view token);

}  // namespace egycorpus

#endif  // EGYCORPUS_RECORD_CLEAN_H_
