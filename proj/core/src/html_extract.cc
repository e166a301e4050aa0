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

#include "egycorpus/html_extract.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <memory>
#include <sstream>
#include <utility>

#include <unicode/ucnv.h>
#include <unicode/unistr.h>

#include "egycorpus/record_clean.h"
#include "egycorpus/unicode.h"

namespace egycorpus {
namespace {

char Lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; }

bool IsAlpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

bool IsNameChar(char c) {
  return IsAlpha(c) || (c >= '0' && c <= '9') || c == '-' || c == ':' || c == '_';
}

std::string LowerCopy(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = Lower(c);
  return out;
}

template <size_t N>
bool Contains(const std::array<std::string_view, N>& set, std::string_view name) {
  return std::find(set.begin(), set.end(), name) != set.end();
}

constexpr std::array<std::string_view, 14> kVoidElements = {
    "area", "base", "br",   "col",   "embed",  "hr",    "img",
    "input", "link", "meta", "param", "source", "track", "wbr"};

constexpr std::array<std::string_view, 44> kBlockElements = {
    "address", "article", "aside",   "blockquote", "body",    "caption",
    "center",  "dd",      "details", "dialog",     "div",     "dl",
    "dt",      "fieldset", "figcaption", "figure", "footer",  "form",
    "h1",      "h2",      "h3",      "h4",         "h5",      "h6",
    "header",  "hr",      "html",    "li",         "main",    "nav",
    "ol",      "option",  "p",       "pre",        "section", "table",
    "tbody",   "td",      "tfoot",   "th",         "thead",   "tr",
    "ul",      "legend"};

// Elements whose content is never visible; script-like ones are skipped as
// raw text, head is tracked on the stack.
constexpr std::array<std::string_view, 6> kRawTextElements = {
    "script", "style", "noscript", "template", "textarea", "title"};

constexpr std::array<std::string_view, 7> kSelfNesting = {
    "li", "dt", "dd", "option", "tr", "td", "th"};

struct NamedEntity {
  std::string_view name;
  char32_t cp;
};

constexpr std::array<NamedEntity, 30> kNamedEntities = {{
    {"amp", '&'},       {"lt", '<'},        {"gt", '>'},        {"quot", '"'},
    {"apos", '\''},     {"nbsp", 0xA0},     {"copy", 0xA9},     {"reg", 0xAE},
    {"hellip", 0x2026}, {"mdash", 0x2014},  {"ndash", 0x2013},  {"laquo", 0xAB},
    {"raquo", 0xBB},    {"lrm", 0x200E},    {"rlm", 0x200F},    {"zwnj", 0x200C},
    {"zwj", 0x200D},    {"shy", 0xAD},      {"lsquo", 0x2018},  {"rsquo", 0x2019},
    {"ldquo", 0x201C},  {"rdquo", 0x201D},  {"bull", 0x2022},   {"middot", 0xB7},
    {"trade", 0x2122},  {"times", 0xD7},    {"divide", 0xF7},   {"deg", 0xB0},
    {"euro", 0x20AC},   {"sect", 0xA7},
}};

struct Element {
  std::string tag;
  std::string id;
  std::vector<std::string> classes;
};

bool CompoundMatches(const Selector::Compound& c, const Element& e) {
  if (!c.tag.empty() && c.tag != e.tag) return false;
  if (!c.id.empty() && c.id != e.id) return false;
  for (const std::string& cls : c.classes) {
    if (std::find(e.classes.begin(), e.classes.end(), cls) == e.classes.end()) {
      return false;
    }
  }
  return true;
}

bool SelectorMatches(const Selector& sel, const std::vector<Element>& stack) {
  const auto& compounds = sel.compounds();
  if (compounds.empty() || stack.empty()) return false;
  if (!CompoundMatches(compounds.back(), stack.back())) return false;
  int c = static_cast<int>(compounds.size()) - 2;
  for (int e = static_cast<int>(stack.size()) - 2; e >= 0 && c >= 0; --e) {
    if (CompoundMatches(compounds[c], stack[e])) --c;
  }
  return c < 0;
}

class Extractor {
 public:
  Extractor(std::string_view html, const std::vector<Selector>& selectors)
      : html_(html), selectors_(selectors) {}

  std::vector<std::string> Run() {
    size_t pos = 0;
    while (pos < html_.size()) {
      if (html_[pos] == '<') {
        pos = HandleMarkup(pos);
      } else {
        const size_t next = html_.find('<', pos);
        const size_t end = next == std::string_view::npos ? html_.size() : next;
        AppendText(html_.substr(pos, end - pos));
        pos = end;
      }
    }
    while (!stack_.empty()) Pop();
    if (selectors_.empty()) Flush();
    return std::move(blocks_);
  }

 private:
  bool Suppressed() const { return head_depth_ > 0; }

  void AppendText(std::string_view raw) {
    if (Suppressed()) return;
    if (!selectors_.empty() && !capturing_) return;
    buffer_ += DecodeEntities(raw);
  }

  void Boundary() {
    if (selectors_.empty()) {
      Flush();
    } else if (capturing_) {
      buffer_.push_back(' ');
    }
  }

  // Escaped markup such as "&lt;b&gt;" decodes to tag-shaped text; it is
  // removed here so no block carries tag remnants.
  void Flush() {
    std::string block = RemoveHtmlTags(unicode::CollapseWhitespace(buffer_));
    buffer_.clear();
    if (!block.empty()) blocks_.push_back(std::move(block));
  }

  void Push(Element element) {
    const bool block = Contains(kBlockElements, element.tag);
    if (element.tag == "head") ++head_depth_;
    stack_.push_back(std::move(element));
    if (block) Boundary();
    if (!selectors_.empty() && !capturing_ && !Suppressed()) {
      for (const Selector& sel : selectors_) {
        if (SelectorMatches(sel, stack_)) {
          capturing_ = true;
          capture_index_ = stack_.size() - 1;
          buffer_.clear();
          break;
        }
      }
    }
  }

  void Pop() {
    const Element element = std::move(stack_.back());
    stack_.pop_back();
    if (element.tag == "head") --head_depth_;
    if (capturing_ && stack_.size() == capture_index_) {
      capturing_ = false;
      Flush();
      return;
    }
    if (Contains(kBlockElements, element.tag)) Boundary();
  }

  // Pops up to and including the innermost open element named `tag`.
  bool PopTo(std::string_view tag) {
    for (size_t k = stack_.size(); k-- > 0;) {
      if (stack_[k].tag == tag) {
        while (stack_.size() > k) Pop();
        return true;
      }
    }
    return false;
  }

  size_t HandleMarkup(size_t pos) {
    const std::string_view rest = html_.substr(pos);
    if (rest.substr(0, 4) == "<!--") {
      const size_t end = html_.find("-->", pos + 4);
      return end == std::string_view::npos ? html_.size() : end + 3;
    }
    if (rest.size() >= 2 && (rest[1] == '!' || rest[1] == '?')) {
      const size_t end = html_.find('>', pos);
      return end == std::string_view::npos ? html_.size() : end + 1;
    }
    if (rest.size() >= 3 && rest[1] == '/' && IsAlpha(rest[2])) {
      size_t i = pos + 2;
      while (i < html_.size() && IsNameChar(html_[i])) ++i;
      const std::string tag = LowerCopy(html_.substr(pos + 2, i - pos - 2));
      const size_t end = html_.find('>', i);
      HandleEndTag(tag);
      return end == std::string_view::npos ? html_.size() : end + 1;
    }
    // "</>" is dropped and "</" before any other character opens a bogus
    // comment that runs to the next '>'.
    if (rest.size() >= 2 && rest[1] == '/') {
      const size_t end = html_.find('>', pos + 2);
      return end == std::string_view::npos ? html_.size() : end + 1;
    }
    if (rest.size() >= 2 && IsAlpha(rest[1])) return HandleStartTag(pos);
    AppendText("<");
    return pos + 1;
  }

  void HandleEndTag(const std::string& tag) {
    if (tag == "br") {
      AppendText(" ");
      return;
    }
    if (!PopTo(tag) && Contains(kBlockElements, tag)) Boundary();
  }

  size_t HandleStartTag(size_t pos) {
    size_t i = pos + 1;
    while (i < html_.size() && IsNameChar(html_[i])) ++i;
    Element element;
    element.tag = LowerCopy(html_.substr(pos + 1, i - pos - 1));
    bool self_closing = false;
    // Attributes.
    while (i < html_.size()) {
      while (i < html_.size() && IsSpace(html_[i])) ++i;
      if (i >= html_.size()) break;
      if (html_[i] == '>') {
        ++i;
        break;
      }
      if (html_[i] == '/') {
        self_closing = i + 1 < html_.size() && html_[i + 1] == '>';
        ++i;
        continue;
      }
      const size_t name_start = i;
      while (i < html_.size() && !IsSpace(html_[i]) && html_[i] != '=' &&
             html_[i] != '>' && html_[i] != '/') {
        ++i;
      }
      const std::string name = LowerCopy(html_.substr(name_start, i - name_start));
      if (i == name_start) {  // stray character
        ++i;
        continue;
      }
      while (i < html_.size() && IsSpace(html_[i])) ++i;
      std::string value;
      if (i < html_.size() && html_[i] == '=') {
        ++i;
        while (i < html_.size() && IsSpace(html_[i])) ++i;
        if (i < html_.size() && (html_[i] == '"' || html_[i] == '\'')) {
          const char quote = html_[i++];
          size_t close = html_.find(quote, i);
          if (close == std::string_view::npos) close = html_.size();
          value = std::string(html_.substr(i, close - i));
          i = std::min(close + 1, html_.size());
        } else {
          const size_t v = i;
          while (i < html_.size() && !IsSpace(html_[i]) && html_[i] != '>') ++i;
          value = std::string(html_.substr(v, i - v));
        }
      }
      if (name == "id") {
        element.id = DecodeEntities(value);
      } else if (name == "class") {
        std::istringstream words(DecodeEntities(value));
        std::string cls;
        while (words >> cls) element.classes.push_back(cls);
      }
    }
    OpenElement(std::move(element), self_closing);
    const std::string& tag = last_opened_;
    if (Contains(kRawTextElements, tag)) return SkipRawText(i, tag);
    return i;
  }

  void OpenElement(Element element, bool self_closing) {
    last_opened_ = element.tag;
    const std::string& tag = element.tag;
    if (tag == "br") {
      AppendText(" ");
      return;
    }
    if (tag == "body" && head_depth_ > 0) PopTo("head");
    if (!stack_.empty()) {
      const std::string& top = stack_.back().tag;
      if (top == "p" && Contains(kBlockElements, tag)) {
        Pop();
      } else if (top == tag && Contains(kSelfNesting, tag)) {
        Pop();
      }
    }
    if (Contains(kVoidElements, tag) || Contains(kRawTextElements, tag)) {
      if (Contains(kBlockElements, tag)) Boundary();
      return;
    }
    Push(std::move(element));
    if (self_closing) Pop();
  }

  size_t SkipRawText(size_t pos, const std::string& tag) {
    const std::string closing = "</" + tag;
    for (size_t i = pos; i < html_.size(); ++i) {
      if (html_[i] != '<' || i + closing.size() > html_.size()) continue;
      if (LowerCopy(html_.substr(i, closing.size())) != closing) continue;
      const size_t after = i + closing.size();
      if (after < html_.size() && IsNameChar(html_[after])) continue;
      const size_t end = html_.find('>', after);
      return end == std::string_view::npos ? html_.size() : end + 1;
    }
    return html_.size();
  }

  std::string_view html_;
  const std::vector<Selector>& selectors_;
  std::vector<Element> stack_;
  std::vector<std::string> blocks_;
  std::string buffer_;
  std::string last_opened_;
  int head_depth_ = 0;
  bool capturing_ = false;
  size_t capture_index_ = 0;
};

std::string CanonicalCharset(std::string name) {
  name = LowerCopy(name);
  if (name == "utf8") return "utf-8";
  return name;
}

}  // namespace

Selector Selector::Parse(std::string_view text) {
  Selector sel;
  sel.text_ = std::string(text);
  std::istringstream parts{std::string(text)};
  std::string part;
  while (parts >> part) {
    Compound c;
    size_t i = 0;
    auto read_ident = [&]() {
      const size_t start = i;
      while (i < part.size() && part[i] != '.' && part[i] != '#') ++i;
      return part.substr(start, i - start);
    };
    auto valid = [](const std::string& ident) {
      return !ident.empty() && std::all_of(ident.begin(), ident.end(), [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_';
      });
    };
    if (part[0] != '.' && part[0] != '#') {
      c.tag = LowerCopy(read_ident());
      if (c.tag == "*") {
        c.tag.clear();
      } else if (!valid(c.tag)) {
        throw std::invalid_argument("unsupported selector '" + sel.text_ + "'");
      }
    }
    while (i < part.size()) {
      const char kind = part[i++];
      std::string ident = read_ident();
      if (!valid(ident)) {
        throw std::invalid_argument("malformed selector '" + sel.text_ + "'");
      }
      if (kind == '.') {
        c.classes.push_back(std::move(ident));
      } else {
        c.id = std::move(ident);
      }
    }
    sel.compounds_.push_back(std::move(c));
  }
  if (sel.compounds_.empty()) throw std::invalid_argument("empty selector");
  return sel;
}

std::vector<Selector> ParseSelectorList(const std::vector<std::string>& items) {
  std::vector<Selector> out;
  for (const std::string& item : items) {
    std::string_view rest = item;
    while (!rest.empty()) {
      const size_t comma = rest.find(',');
      const std::string_view piece = rest.substr(0, comma);
      if (unicode::CollapseWhitespace(piece).empty()) {
        throw std::invalid_argument("empty selector in '" + item + "'");
      }
      out.push_back(Selector::Parse(piece));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }
  return out;
}

HtmlPage ReadHtmlPage(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return HtmlPage{path, buf.str(), {}};
}

std::string DetectEncoding(std::string_view bytes, std::string_view fallback) {
  if (bytes.substr(0, 3) == "\xEF\xBB\xBF") return "utf-8";
  if (bytes.substr(0, 2) == "\xFF\xFE") return "utf-16le";
  if (bytes.substr(0, 2) == "\xFE\xFF") return "utf-16be";
  const std::string head = LowerCopy(bytes.substr(0, 4096));
  for (size_t p = head.find("charset"); p != std::string::npos;
       p = head.find("charset", p + 7)) {
    size_t i = p + 7;
    while (i < head.size() && IsSpace(head[i])) ++i;
    if (i >= head.size() || head[i] != '=') continue;
    ++i;
    while (i < head.size() && (IsSpace(head[i]) || head[i] == '"' || head[i] == '\'')) ++i;
    const size_t start = i;
    while (i < head.size() && (IsNameChar(head[i]) || head[i] == '.')) ++i;
    if (i == start) continue;
    std::string name = CanonicalCharset(head.substr(start, i - start));
    // A meta-declared UTF-16 page is necessarily ASCII-compatible.
    if (name.rfind("utf-16", 0) == 0) return "utf-8";
    return name;
  }
  if (unicode::IsValidUtf8(bytes)) return "utf-8";
  return CanonicalCharset(std::string(fallback));
}

std::string DecodeHtmlPage(const HtmlPage& page, std::string_view fallback) {
  const std::string encoding =
      page.encoding.empty() ? DetectEncoding(page.bytes, fallback) : CanonicalCharset(page.encoding);
  std::string_view bytes = page.bytes;
  if (encoding == "utf-8") {
    if (bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);
    return unicode::SanitizeUtf8(bytes);
  }
  UErrorCode status = U_ZERO_ERROR;
  std::unique_ptr<UConverter, void (*)(UConverter*)> conv(
      ucnv_open(encoding.c_str(), &status), ucnv_close);
  if (U_FAILURE(status) || !conv) {
    throw UndecodableFile(page.path + ": unsupported charset '" + encoding + "'");
  }
  icu::UnicodeString text(bytes.data(), static_cast<int32_t>(bytes.size()), conv.get(),
                          status);
  if (U_FAILURE(status)) {
    throw UndecodableFile(page.path + ": cannot decode as '" + encoding + "'");
  }
  if (text.length() > 0 && text.charAt(0) == 0xFEFF) text.remove(0, 1);
  std::string out;
  text.toUTF8String(out);
  return out;
}

std::string DecodeEntities(std::string_view text) {
  if (text.find('&') == std::string_view::npos) return std::string(text);
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out.push_back(text[i++]);
      continue;
    }
    size_t j = i + 1;
    if (j < text.size() && text[j] == '#') {
      ++j;
      const bool hex = j < text.size() && (text[j] == 'x' || text[j] == 'X');
      if (hex) ++j;
      const size_t digits_start = j;
      char32_t value = 0;
      bool overflow = false;
      while (j < text.size()) {
        const char c = text[j];
        int d = -1;
        if (c >= '0' && c <= '9') {
          d = c - '0';
        } else if (hex && Lower(c) >= 'a' && Lower(c) <= 'f') {
          d = Lower(c) - 'a' + 10;
        }
        if (d < 0) break;
        value = value * (hex ? 16 : 10) + static_cast<char32_t>(d);
        if (value > 0x10FFFF) overflow = true;
        ++j;
      }
      if (j == digits_start) {
        out.push_back(text[i++]);
        continue;
      }
      if (j < text.size() && text[j] == ';') ++j;
      if (overflow || value == 0 || (value >= 0xD800 && value <= 0xDFFF)) {
        value = unicode::kReplacementChar;
      }
      unicode::AppendUtf8(value, &out);
      i = j;
      continue;
    }
    while (j < text.size() && IsNameChar(text[j])) ++j;
    const std::string_view name = text.substr(i + 1, j - i - 1);
    const bool has_semicolon = j < text.size() && text[j] == ';';
    const auto it = std::find_if(kNamedEntities.begin(), kNamedEntities.end(),
                                 [&](const NamedEntity& e) { return e.name == name; });
    // Legacy entities without ';' are only honoured for the basic five.
    const bool legacy_ok = name == "amp" || name == "lt" || name == "gt" ||
                           name == "quot" || name == "nbsp";
    if (it != kNamedEntities.end() && (has_semicolon || legacy_ok)) {
      unicode::AppendUtf8(it->cp, &out);
      i = j + (has_semicolon ? 1 : 0);
    } else {
      out.push_back(text[i++]);
    }
  }
  return out;
}

std::vector<std::string> ExtractTextFromHtml(std::string_view html,
                                             const std::vector<Selector>& selectors) {
  return Extractor(html, selectors).Run();
}

std::vector<std::string> ExtractText(const HtmlPage& page,
                                     const std::vector<Selector>& selectors,
                                     std::string_view fallback_encoding) {
  return ExtractTextFromHtml(DecodeHtmlPage(page, fallback_encoding), selectors);
}

}  // namespace egycorpus
