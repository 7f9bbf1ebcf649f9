#include <fstream>
#include <set>
#include <unordered_map>

#include "corpus_internal.hpp"
#include "qqual/corpus.hpp"
#include "qqual/error.hpp"
#include "qqual/text.hpp"

namespace qqual::corpus {

namespace {

// Attributes of one "<row .../>" element, values XML-unescaped.
std::unordered_map<std::string, std::string> parse_row_attributes(std::string_view line) {
  std::unordered_map<std::string, std::string> attrs;
  auto start = line.find("<row");
  std::size_t i = start + 4;
  auto end = line.rfind("/>");
  if (end == std::string_view::npos || end < i) throw FormatError("row element is not closed");
  while (i < end) {
    while (i < end && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= end) break;
    auto eq = line.find('=', i);
    if (eq == std::string_view::npos || eq >= end) throw FormatError("attribute without value");
    std::string name = text::trim(line.substr(i, eq - i));
    std::size_t q = eq + 1;
    if (q >= end || (line[q] != '"' && line[q] != '\'')) throw FormatError("unquoted attribute " + name);
    auto close = line.find(line[q], q + 1);
    if (close == std::string_view::npos || close > end) throw FormatError("unterminated attribute " + name);
    attrs[name] = decode_entities(line.substr(q + 1, close - q - 1));
    i = close + 1;
  }
  return attrs;
}

// Tags come as "<a><b>" (classic dumps) or "|a|b|" (newer dumps).
std::vector<std::string> parse_dump_tags(const std::string& raw) {
  std::vector<std::string> tags;
  if (!raw.empty() && raw.front() == '|') {
    for (auto& t : text::split(raw, '|'))
      if (!t.empty()) tags.push_back(t);
    return tags;
  }
  std::size_t i = 0;
  while (i < raw.size()) {
    auto open = raw.find('<', i);
    if (open == std::string::npos) break;
    auto close = raw.find('>', open);
    if (close == std::string::npos) throw FormatError("unterminated tag list");
    tags.push_back(raw.substr(open + 1, close - open - 1));
    i = close + 1;
  }
  return tags;
}

const std::string& required(const std::unordered_map<std::string, std::string>& attrs, const char* key) {
  auto it = attrs.find(key);
  if (it == attrs.end()) throw FormatError(std::string("missing attribute ") + key);
  return it->second;
}

// Returns false for rows that are not questions.
bool parse_dump_row(std::string_view line, Question& q) {
  auto attrs = parse_row_attributes(line);
  if (text::parse_int(required(attrs, "PostTypeId")) != 1) return false;
  q.id = text::parse_int(required(attrs, "Id"));
  if (q.id <= 0) throw FormatError("Id must be positive");
  q.title = required(attrs, "Title");
  q.body = required(attrs, "Body");
  q.tags = normalize_tags(parse_dump_tags(required(attrs, "Tags")));
  q.score = text::parse_int(required(attrs, "Score"));
  auto ac = attrs.find("AnswerCount");
  q.answer_count = ac == attrs.end() ? 0 : text::parse_int(ac->second);
  q.creation_date = parse_date(required(attrs, "CreationDate"));
  q.language = language_from_tags(q.tags);
  return true;
}

}  // namespace

LoadResult load_corpus_stream(std::istream& in, InputFormat format, const FilterSpec& filters) {
  LoadResult result;
  std::set<std::int64_t> seen;
  std::string line;
  std::size_t row_no = 0;
  while (std::getline(in, line)) {
    ++row_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view = line;
    if (format == InputFormat::DumpPosts) {
      if (view.find("<row") == std::string_view::npos) continue;  // XML prolog, <posts>, </posts>
    } else if (text::trim(view).empty()) {
      continue;
    }
    ++result.rows_read;
    Question q;
    try {
      if (format == InputFormat::DumpPosts) {
        if (!parse_dump_row(view, q)) continue;
      } else {
        q = parse_record_line(view);
      }
      if (!seen.insert(q.id).second) throw FormatError("duplicate id " + std::to_string(q.id));
    } catch (const Error& e) {
      ++result.malformed_rows;
      result.warnings.push_back("row " + std::to_string(row_no) + ": " + e.what());
      continue;
    }
    if (!filters.accepts(q)) {
      ++result.filtered_out;
      continue;
    }
    result.questions.push_back(std::move(q));
  }
  if (result.questions.empty())
    throw EmptyCorpusError("no question survived the filters (" + std::to_string(result.rows_read) +
                           " rows read, " + std::to_string(result.malformed_rows) + " malformed)");
  return result;
}

LoadResult load_corpus(const std::string& path, InputFormat format, const FilterSpec& filters) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return load_corpus_stream(in, format, filters);
}

}  // namespace qqual::corpus
