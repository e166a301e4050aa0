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

#ifndef EGYCORPUS_MLM_PREP_H_
#define EGYCORPUS_MLM_PREP_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace egycorpus {

using TokenId = uint32_t;

class VocabError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The vocabulary lacks one of pad/unk/cls/sep/mask.
class VocabMissingSpecials : public VocabError {
 public:
  using VocabError::VocabError;
};

// How word boundaries are marked in the pieces.
enum class PieceScheme {
  kSentencePiece,  // word-initial pieces carry the U+2581 prefix
  kWordPiece,      // word-internal pieces carry a "##" prefix
};

struct SpecialIds {
  TokenId pad = 0;
  TokenId unk = 0;
  TokenId cls = 0;
  TokenId sep = 0;
  TokenId mask = 0;
};

inline constexpr size_t kDefaultVocabLimit = 75000;

// Pre-trained subword vocabulary. File layout:
//
//   #egycorpus-vocab 1
//   scheme=sentencepiece        (or wordpiece)
//   pad=<pad>                   special token pieces, all five required
//   unk=<unk>
//   cls=[CLS]
//   sep=[SEP]
//   mask=[MASK]
//   ---
//   <pad>                       one piece per line; ids are line order
//   ...                         anything after a TAB on a piece line
//                               (e.g. a score) is ignored
class Vocab {
 public:
  static Vocab Parse(std::string_view content, size_t limit = kDefaultVocabLimit);
  static Vocab Load(const std::string& path, size_t limit = kDefaultVocabLimit);
  // Builds from pieces in id order; specials named by piece string.
  static Vocab FromPieces(std::vector<std::string> pieces, PieceScheme scheme,
                          const std::string& pad, const std::string& unk,
                          const std::string& cls, const std::string& sep,
                          const std::string& mask, size_t limit = kDefaultVocabLimit);

  size_t size() const { return pieces_.size(); }
  const std::vector<std::string>& pieces() const { return pieces_; }
  const SpecialIds& specials() const { return specials_; }
  PieceScheme scheme() const { return scheme_; }
  bool IsSpecial(TokenId id) const;
  // -1 when absent.
  int64_t Find(std::string_view piece) const;
  size_t max_piece_bytes() const { return max_piece_bytes_; }
  std::string Serialize() const;

 private:
  struct Hash {
    using is_transparent = void;
    size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> pieces_;
  std::unordered_map<std::string, TokenId, Hash, std::equal_to<>> ids_;
  SpecialIds specials_;
  PieceScheme scheme_ = PieceScheme::kSentencePiece;
  size_t max_piece_bytes_ = 0;
};

inline constexpr std::string_view kWordBoundary = "\xE2\x96\x81";  // U+2581

// Greedy longest-match pieces of `text` (no cls/sep, no truncation).
// Consecutive characters that no piece covers become a single unk.
std::vector<TokenId> EncodePieces(std::string_view text, const Vocab& vocab);

// [cls] + first (max_seq_len - 2) pieces + [sep].
std::vector<TokenId> Encode(std::string_view text, const Vocab& vocab, size_t max_seq_len = 128);

// Splits the pieces into consecutive windows of max_seq_len - 2, each
// wrapped in cls/sep. Empty text yields one [cls, sep] window.
std::vector<std::vector<TokenId>> EncodeChunks(std::string_view text, const Vocab& vocab,
                                               size_t max_seq_len = 128);

struct MlmConfig {
  size_t max_seq_len = 128;
  double mask_rate = 0.15;
  double mask_token_prob = 0.8;
  double random_token_prob = 0.1;
  double keep_token_prob = 0.1;
  uint64_t seed = 0;

  // Throws std::invalid_argument.
  void Validate() const;
};

struct MlmExample {
  std::vector<TokenId> input_ids;
  std::vector<uint32_t> label_positions;  // ascending
  std::vector<TokenId> label_ids;
  uint32_t attention_length = 0;

  bool operator==(const MlmExample&) const = default;
};

// round-half-up(mask_rate * maskable), at least 1 when maskable >= 1.
size_t MaskCount(size_t maskable, double mask_rate);

// Selects MaskCount positions among the non-special tokens uniformly
// without replacement, then replaces each with [MASK], a random
// non-special piece different from the original, or leaves it, with the
// configured probabilities. The generator is keyed on (seed, ids) so the
// same input always yields the same example.
MlmExample MaskExample(std::span<const TokenId> ids, const MlmConfig& cfg, const Vocab& vocab);

// Writes label_ids back at label_positions.
std::vector<TokenId> Unmask(const MlmExample& example);

// Binary record: u32 n, n x u32 token, u32 m, m x (u32 pos, u32 id); all
// little-endian.
void WriteExampleBinary(const MlmExample& example, std::ostream& out);
// Returns false at clean end of stream; throws std::runtime_error when the
// stream ends mid-record.
bool ReadExampleBinary(std::istream& in, MlmExample* example);

// "ids=1 2 3 | labels=2:57 | len=3" per line.
std::string ExampleDebugLine(const MlmExample& example);

}  // namespace egycorpus

#endif  // EGYCORPUS_MLM_PREP_H_
