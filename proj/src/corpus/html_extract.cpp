#include <algorithm>
#include <array>
#include <charconv>
#include <optional>
#include <string_view>

#include "qqual/corpus.hpp"
#include "qqual/text.hpp"

namespace qqual::corpus {

namespace {

struct NamedEntity {
  std::string_view name;
  char32_t cp;
};

// nbsp decodes to a plain space so whitespace collapsing treats it as a separator.
constexpr std::array<NamedEntity, 20> kEntities{{{"lt", '<'},        {"gt", '>'},
                                                 {"amp", '&'},       {"quot", '"'},
                                                 {"apos", '\''},     {"nbsp", ' '},
                                                 {"copy", 0xA9},     {"reg", 0xAE},
                                                 {"hellip", 0x2026}, {"mdash", 0x2014},
                                                 {"ndash", 0x2013},  {"lsquo", 0x2018},
                                                 {"rsquo", 0x2019},  {"ldquo", 0x201C},
                                                 {"rdquo", 0x201D},  {"times", 0xD7},
                                                 {"euro", 0x20AC},   {"laquo", 0xAB},
                                                 {"raquo", 0xBB},    {"middot", 0xB7}}};

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

struct Tag {
  std::string name;  // lowercase
  bool closing = false;
  bool comment = false;
  std::size_t end = 0;  // index one past '>'
};

std::optional<Tag> scan_tag(std::string_view html, std::size_t at) {
  std::size_t i = at + 1;
  if (i >= html.size()) return std::nullopt;
  Tag tag;
  if (html.substr(i, 3) == "!--") {
    auto close = html.find("-->", i + 3);
    tag.comment = true;
    tag.end = close == std::string_view::npos ? html.size() : close + 3;
    return tag;
  }
  if (html[i] == '!' || html[i] == '?') {
    auto close = html.find('>', i);
    if (close == std::string_view::npos) return std::nullopt;
    tag.comment = true;
    tag.end = close + 1;
    return tag;
  }
  if (html[i] == '/') {
    tag.closing = true;
    ++i;
  }
  if (i >= html.size() || !is_alpha(html[i])) return std::nullopt;
  std::size_t name_start = i;
  while (i < html.size() && (is_alpha(html[i]) || (html[i] >= '0' && html[i] <= '9'))) ++i;
  tag.name = text::to_lower_ascii(html.substr(name_start, i - name_start));
  char quote = 0;
  for (; i < html.size(); ++i) {
    char c = html[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '>') {
      tag.end = i + 1;
      return tag;
    } else if (c == '<') {
      // a stray '<' inside what looked like a tag: treat the original '<' as text
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool separates_text(std::string_view name) {
  static constexpr std::string_view kBlock[] = {
      "p",  "div", "br",  "li", "ul", "ol", "h1",    "h2", "h3", "h4", "h5", "h6",
      "hr", "tr",  "td",  "th", "dd", "dt", "table", "dl", "blockquote"};
  return std::find(std::begin(kBlock), std::end(kBlock), name) != std::end(kBlock);
}

}  // namespace

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    auto semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(s[i++]);
      continue;
    }
    std::string_view ref = s.substr(i + 1, semi - i - 1);
    std::optional<char32_t> cp;
    if (!ref.empty() && ref[0] == '#') {
      std::uint32_t v = 0;
      bool hex = ref.size() > 1 && (ref[1] == 'x' || ref[1] == 'X');
      std::string_view digits = ref.substr(hex ? 2 : 1);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v, hex ? 16 : 10);
      if (!digits.empty() && ec == std::errc{} && ptr == digits.data() + digits.size() && v < 0x110000)
        cp = v == 0 ? 0xFFFD : v;
    } else {
      for (const auto& e : kEntities)
        if (e.name == ref) cp = e.cp;
    }
    if (!cp) {
      out.push_back(s[i++]);
      continue;
    }
    text::append_utf8(out, *cp);
    i = semi + 1;
  }
  return out;
}

ExtractedBody extract_body(std::string_view html) {
  ExtractedBody result;
  std::string prose;
  std::string block;
  int pre_depth = 0;
  int code_depth = 0;
  bool in_block = false;

  auto flush_block = [&] {
    std::string decoded = decode_entities(block);
    // whitespace-only blocks carry no code
    if (!text::trim(decoded).empty()) result.code_blocks.push_back(std::move(decoded));
    block.clear();
    in_block = false;
    code_depth = 0;
    prose.push_back(' ');
  };

  std::size_t i = 0;
  while (i < html.size()) {
    if (html[i] == '<') {
      if (auto tag = scan_tag(html, i)) {
        i = tag->end;
        if (tag->comment) continue;
        if (in_block) {
          if (tag->name == "code") {
            if (!tag->closing) {
              ++code_depth;
            } else if (--code_depth == 0) {
              flush_block();
            }
          } else if (tag->name == "pre" && tag->closing) {
            flush_block();
            pre_depth = std::max(0, pre_depth - 1);
          } else if (tag->name == "br") {
            block.push_back('\n');
          }
          continue;
        }
        if (tag->name == "pre") {
          pre_depth = tag->closing ? std::max(0, pre_depth - 1) : pre_depth + 1;
          prose.push_back(' ');
        } else if (tag->name == "code" && !tag->closing && pre_depth > 0) {
          in_block = true;
          code_depth = 1;
        } else if (separates_text(tag->name)) {
          prose.push_back(' ');
        }
        continue;
      }
    }
    (in_block ? block : prose).push_back(html[i]);
    ++i;
  }
  if (in_block) flush_block();
  result.text = text::collapse_whitespace(decode_entities(prose));
  return result;
}

QuestionContent extract_content(const Question& q) {
  ExtractedBody body = extract_body(q.body);
  QuestionContent c;
  c.body_prose = std::move(body.text);
  c.prose = text::collapse_whitespace(q.title + " " + c.body_prose);
  c.code_blocks = std::move(body.code_blocks);
  c.prose_length = text::decode_utf8(c.prose).size();
  for (const auto& b : c.code_blocks) c.code_length += text::decode_utf8(b).size();
  return c;
}

}  // namespace qqual::corpus
