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

#ifndef EGYCORPUS_HTML_EXTRACT_H_
#define EGYCORPUS_HTML_EXTRACT_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace egycorpus {

// A saved forum page. `encoding` is empty until detected.
struct HtmlPage {
  std::string path;
  std::string bytes;
  std::string encoding;
};

// The page's bytes cannot be converted to Unicode (unknown charset).
class UndecodableFile : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simple CSS selector: whitespace-separated compounds (descendant
// combinator), each compound "tag", ".class", "#id" or a combination such
// as "div.post.first" / "td#body". Comma-separated lists are split into
// several selectors by ParseSelectorList.
class Selector {
 public:
  struct Compound {
    std::string tag;  // lowercase, empty = any
    std::string id;
    std::vector<std::string> classes;
  };

  // Throws std::invalid_argument on an empty or malformed selector.
  static Selector Parse(std::string_view text);

  const std::vector<Compound>& compounds() const { return compounds_; }
  const std::string& text() const { return text_; }

 private:
  std::string text_;
  std::vector<Compound> compounds_;
};

std::vector<Selector> ParseSelectorList(const std::vector<std::string>& items);

HtmlPage ReadHtmlPage(const std::string& path);

// Determines the charset: byte-order mark, then a <meta> charset
// declaration in the first 4 KiB, then UTF-8 when the bytes validate, else
// `fallback`. Returns a lowercase charset name.
std::string DetectEncoding(std::string_view bytes, std::string_view fallback = "windows-1256");

// Converts the page to UTF-8 using page.encoding (detected if empty).
// Invalid sequences become U+FFFD. Throws UndecodableFile.
std::string DecodeHtmlPage(const HtmlPage& page, std::string_view fallback = "windows-1256");

// Decodes named and numeric character references.
std::string DecodeEntities(std::string_view text);

// Visible text blocks in document order. Without selectors every
// block-level element bounds a block; with selectors each outermost
// matching element yields one block. script/style/head/noscript/template
// content is never emitted; <br> becomes a space; tag-shaped text left by
// entity decoding is removed. Blocks are whitespace-collapsed and
// non-empty. Never throws on malformed markup.
std::vector<std::string> ExtractTextFromHtml(std::string_view html,
                                             const std::vector<Selector>& selectors = {});

std::vector<std::string> ExtractText(const HtmlPage& page,
                                     const std::vector<Selector>& selectors = {},
                                     std::string_view fallback_encoding = "windows-1256");

}  // namespace egycorpus

#endif  // EGYCORPUS_HTML_EXTRACT_H_
