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

#include "egycorpus/mlm_prep.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#define XXH_INLINE_ALL
#include "xxhash.h"

#include "egycorpus/corpus_ops.h"
#include "egycorpus/unicode.h"

namespace egycorpus {
namespace {

constexpr std::string_view kVocabMagic = "#egycorpus-vocab 1";
constexpr std::string_view kWordPiecePrefix = "##";

std::string_view StripCr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

bool IsBoundary(std::string_view s, size_t pos) {
  return pos >= s.size() || (static_cast<unsigned char>(s[pos]) & 0xC0) != 0x80;
}

// Appends the pieces of one word (already carrying any scheme prefix for
// the first piece) to out.
void EncodeWord(std::string_view word, const Vocab& vocab, std::vector<TokenId>* out) {
  const bool wordpiece = vocab.scheme() == PieceScheme::kWordPiece;
  std::string candidate;
  bool last_was_unk = false;
  size_t pos = 0;
  while (pos < word.size()) {
    const bool continuation = wordpiece && pos > 0;
    size_t best_len = 0;
    int64_t best_id = -1;
    size_t len = std::min(word.size() - pos, vocab.max_piece_bytes());
    for (; len > 0; --len) {
      if (!IsBoundary(word, pos + len)) continue;
      std::string_view piece = word.substr(pos, len);
      if (continuation) {
        candidate.assign(kWordPiecePrefix);
        candidate.append(piece);
        piece = candidate;
      }
      const int64_t id = vocab.Find(piece);
      if (id >= 0) {
        best_len = len;
        best_id = id;
        break;
      }
    }
    if (best_id >= 0) {
      out->push_back(static_cast<TokenId>(best_id));
      pos += best_len;
      last_was_unk = false;
      continue;
    }
    if (!last_was_unk) out->push_back(vocab.specials().unk);
    last_was_unk = true;
    unicode::DecodeUtf8(word, &pos);
  }
}

void PutU32(uint32_t v, std::ostream& out) {
  const char bytes[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                         static_cast<char>((v >> 16) & 0xFF),
                         static_cast<char>((v >> 24) & 0xFF)};
  out.write(bytes, 4);
}

// Returns false on clean EOF before any byte; throws on a partial value.
bool GetU32(std::istream& in, uint32_t* v, bool eof_ok) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  if (in.gcount() == 0 && eof_ok) return false;
  if (in.gcount() != 4) throw std::runtime_error("truncated MLM example record");
  *v = static_cast<uint32_t>(bytes[0]) | (static_cast<uint32_t>(bytes[1]) << 8) |
       (static_cast<uint32_t>(bytes[2]) << 16) | (static_cast<uint32_t>(bytes[3]) << 24);
  return true;
}

}  // namespace

Vocab Vocab::FromPieces(std::vector<std::string> pieces, PieceScheme scheme,
                        const std::string& pad, const std::string& unk, const std::string& cls,
                        const std::string& sep, const std::string& mask, size_t limit) {
  if (pieces.size() > limit) {
    throw VocabError("vocabulary has " + std::to_string(pieces.size()) +
                     " pieces, limit is " + std::to_string(limit));
  }
  Vocab v;
  v.scheme_ = scheme;
  v.pieces_ = std::move(pieces);
  for (size_t i = 0; i < v.pieces_.size(); ++i) {
    const std::string& p = v.pieces_[i];
    if (p.empty()) throw VocabError("empty piece at id " + std::to_string(i));
    if (!v.ids_.emplace(p, static_cast<TokenId>(i)).second) {
      throw VocabError("duplicate piece '" + p + "'");
    }
    v.max_piece_bytes_ = std::max(v.max_piece_bytes_, p.size());
  }
  auto special = [&](const std::string& name, const std::string& piece) -> TokenId {
    if (piece.empty()) throw VocabMissingSpecials("special token '" + name + "' not declared");
    const int64_t id = v.Find(piece);
    if (id < 0) {
      throw VocabMissingSpecials("special token " + name + "='" + piece +
                                 "' is not in the vocabulary");
    }
    return static_cast<TokenId>(id);
  };
  v.specials_ = SpecialIds{special("pad", pad), special("unk", unk), special("cls", cls),
                           special("sep", sep), special("mask", mask)};
  std::vector<TokenId> all = {v.specials_.pad, v.specials_.unk, v.specials_.cls,
                              v.specials_.sep, v.specials_.mask};
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw VocabMissingSpecials("special tokens must have distinct ids");
  }
  return v;
}

Vocab Vocab::Parse(std::string_view content, size_t limit) {
  std::istringstream in{std::string(content)};
  std::string line;
  if (!std::getline(in, line) || StripCr(line) != kVocabMagic) {
    throw VocabError("missing '#egycorpus-vocab 1' header line");
  }
  std::map<std::string, std::string> header;
  bool header_done = false;
  while (std::getline(in, line)) {
    const std::string_view view = StripCr(line);
    if (view == "---") {
      header_done = true;
      break;
    }
    if (view.empty()) continue;
    const size_t eq = view.find('=');
    if (eq == std::string_view::npos) throw VocabError("bad header line '" + line + "'");
    header[std::string(view.substr(0, eq))] = std::string(view.substr(eq + 1));
  }
  if (!header_done) throw VocabError("vocabulary header not terminated by '---'");
  PieceScheme scheme = PieceScheme::kSentencePiece;
  if (auto it = header.find("scheme"); it != header.end()) {
    if (it->second == "wordpiece") {
      scheme = PieceScheme::kWordPiece;
    } else if (it->second != "sentencepiece") {
      throw VocabError("unknown scheme '" + it->second + "'");
    }
  }
  std::vector<std::string> pieces;
  while (std::getline(in, line)) {
    std::string_view view = StripCr(line);
    if (const size_t tab = view.find('\t'); tab != std::string_view::npos) {
      view = view.substr(0, tab);
    }
    if (view.empty()) {
      throw VocabError("empty piece at line " + std::to_string(pieces.size() + 1) +
                       " of the piece list");
    }
    pieces.emplace_back(view);
  }
  auto get = [&](const char* key) {
    auto it = header.find(key);
    return it == header.end() ? std::string() : it->second;
  };
  return FromPieces(std::move(pieces), scheme, get("pad"), get("unk"), get("cls"), get("sep"),
                    get("mask"), limit);
}

Vocab Vocab::Load(const std::string& path, size_t limit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw VocabError("cannot open vocabulary " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str(), limit);
}

bool Vocab::IsSpecial(TokenId id) const {
  return id == specials_.pad || id == specials_.unk || id == specials_.cls ||
         id == specials_.sep || id == specials_.mask;
}

int64_t Vocab::Find(std::string_view piece) const {
  auto it = ids_.find(piece);
  return it == ids_.end() ? -1 : static_cast<int64_t>(it->second);
}

std::string Vocab::Serialize() const {
  std::string out(kVocabMagic);
  out += "\nscheme=";
  out += scheme_ == PieceScheme::kWordPiece ? "wordpiece" : "sentencepiece";
  out += "\npad=" + pieces_[specials_.pad];
  out += "\nunk=" + pieces_[specials_.unk];
  out += "\ncls=" + pieces_[specials_.cls];
  out += "\nsep=" + pieces_[specials_.sep];
  out += "\nmask=" + pieces_[specials_.mask];
  out += "\n---\n";
  for (const std::string& p : pieces_) out += p + "\n";
  return out;
}

std::vector<TokenId> EncodePieces(std::string_view text, const Vocab& vocab) {
  std::vector<TokenId> out;
  std::string word;
  for (std::string_view token : unicode::SplitWhitespace(text)) {
    if (vocab.scheme() == PieceScheme::kSentencePiece) {
      word.assign(kWordBoundary);
      word.append(token);
      EncodeWord(word, vocab, &out);
    } else {
      EncodeWord(token, vocab, &out);
    }
  }
  return out;
}

std::vector<TokenId> Encode(std::string_view text, const Vocab& vocab, size_t max_seq_len) {
  if (max_seq_len < 3) throw std::invalid_argument("max_seq_len must be >= 3");
  std::vector<TokenId> pieces = EncodePieces(text, vocab);
  if (pieces.size() > max_seq_len - 2) pieces.resize(max_seq_len - 2);
  std::vector<TokenId> ids;
  ids.reserve(pieces.size() + 2);
  ids.push_back(vocab.specials().cls);
  ids.insert(ids.end(), pieces.begin(), pieces.end());
  ids.push_back(vocab.specials().sep);
  return ids;
}

std::vector<std::vector<TokenId>> EncodeChunks(std::string_view text, const Vocab& vocab,
                                               size_t max_seq_len) {
  if (max_seq_len < 3) throw std::invalid_argument("max_seq_len must be >= 3");
  const std::vector<TokenId> pieces = EncodePieces(text, vocab);
  const size_t window = max_seq_len - 2;
  std::vector<std::vector<TokenId>> chunks;
  size_t pos = 0;
  do {
    const size_t end = std::min(pieces.size(), pos + window);
    std::vector<TokenId> ids;
    ids.reserve(end - pos + 2);
    ids.push_back(vocab.specials().cls);
    ids.insert(ids.end(), pieces.begin() + static_cast<std::ptrdiff_t>(pos),
               pieces.begin() + static_cast<std::ptrdiff_t>(end));
    ids.push_back(vocab.specials().sep);
    chunks.push_back(std::move(ids));
    pos = end;
  } while (pos < pieces.size());
  return chunks;
}

void MlmConfig::Validate() const {
  if (max_seq_len < 3) throw std::invalid_argument("max_seq_len must be >= 3");
  if (!(mask_rate > 0.0 && mask_rate < 1.0)) {
    throw std::invalid_argument("mask_rate must be in (0,1)");
  }
  for (double p : {mask_token_prob, random_token_prob, keep_token_prob}) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("replacement probabilities must be in [0,1]");
  }
  if (std::abs(mask_token_prob + random_token_prob + keep_token_prob - 1.0) > 1e-9) {
    throw std::invalid_argument("mask/random/keep probabilities must sum to 1");
  }
}

size_t MaskCount(size_t maskable, double mask_rate) {
  if (maskable == 0) return 0;
  const double exact = mask_rate * static_cast<double>(maskable);
  const auto k = static_cast<size_t>(std::floor(exact + 0.5 + 1e-9));
  return std::clamp<size_t>(k, 1, maskable);
}

MlmExample MaskExample(std::span<const TokenId> ids, const MlmConfig& cfg, const Vocab& vocab) {
  MlmExample ex;
  ex.input_ids.assign(ids.begin(), ids.end());
  ex.attention_length = static_cast<uint32_t>(ids.size());

  const SpecialIds& sp = vocab.specials();
  std::vector<uint32_t> maskable;
  for (size_t i = 0; i < ids.size(); ++i) {
    const TokenId t = ids[i];
    if (t != sp.cls && t != sp.sep && t != sp.pad && t != sp.mask) {
      maskable.push_back(static_cast<uint32_t>(i));
    }
  }
  const size_t k = MaskCount(maskable.size(), cfg.mask_rate);
  if (k == 0) return ex;

  const uint64_t content = XXH3_64bits(ids.data(), ids.size_bytes());
  SplitMixRng rng(SplitMix64(cfg.seed) ^ content);
  for (size_t i = 0; i < k; ++i) {
    const size_t j = i + static_cast<size_t>(rng.Below(maskable.size() - i));
    std::swap(maskable[i], maskable[j]);
  }
  maskable.resize(k);
  std::sort(maskable.begin(), maskable.end());

  const size_t vocab_size = vocab.size();
  const size_t non_special = vocab_size > 5 ? vocab_size - 5 : 0;
  for (uint32_t pos : maskable) {
    const TokenId original = ex.input_ids[pos];
    ex.label_positions.push_back(pos);
    ex.label_ids.push_back(original);
    const double u = rng.Unit();
    if (u < cfg.mask_token_prob) {
      ex.input_ids[pos] = sp.mask;
    } else if (u < cfg.mask_token_prob + cfg.random_token_prob && non_special >= 2) {
      TokenId pick = original;
      while (pick == original || vocab.IsSpecial(pick)) {
        pick = static_cast<TokenId>(rng.Below(vocab_size));
      }
      ex.input_ids[pos] = pick;
    }
  }
  return ex;
}

std::vector<TokenId> Unmask(const MlmExample& example) {
  std::vector<TokenId> ids = example.input_ids;
  for (size_t i = 0; i < example.label_positions.size(); ++i) {
    ids.at(example.label_positions[i]) = example.label_ids[i];
  }
  return ids;
}

void WriteExampleBinary(const MlmExample& example, std::ostream& out) {
  PutU32(static_cast<uint32_t>(example.input_ids.size()), out);
  for (TokenId t : example.input_ids) PutU32(t, out);
  PutU32(static_cast<uint32_t>(example.label_positions.size()), out);
  for (size_t i = 0; i < example.label_positions.size(); ++i) {
    PutU32(example.label_positions[i], out);
    PutU32(example.label_ids[i], out);
  }
}

bool ReadExampleBinary(std::istream& in, MlmExample* example) {
  uint32_t n = 0;
  if (!GetU32(in, &n, true)) return false;
  MlmExample ex;
  ex.input_ids.resize(n);
  for (uint32_t i = 0; i < n; ++i) GetU32(in, &ex.input_ids[i], false);
  uint32_t m = 0;
  GetU32(in, &m, false);
  ex.label_positions.resize(m);
  ex.label_ids.resize(m);
  for (uint32_t i = 0; i < m; ++i) {
    GetU32(in, &ex.label_positions[i], false);
    GetU32(in, &ex.label_ids[i], false);
  }
  ex.attention_length = n;
  *example = std::move(ex);
  return true;
}

std::string ExampleDebugLine(const MlmExample& example) {
  std::string out = "ids=";
  for (size_t i = 0; i < example.input_ids.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(example.input_ids[i]);
  }
  out += " | labels=";
  for (size_t i = 0; i < example.label_positions.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(example.label_positions[i]) + ":" + std::to_string(example.label_ids[i]);
  }
  out += " | len=" + std::to_string(example.attention_length);
  return out;
}

}  // namespace egycorpus
