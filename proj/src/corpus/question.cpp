#include <json.hpp>

#include "qqual/corpus.hpp"
#include "qqual/error.hpp"
#include "qqual/text.hpp"
#include "corpus_internal.hpp"

namespace qqual::corpus {

std::string_view language_name(Language lang) {
  switch (lang) {
    case Language::CSharp: return "csharp";
    case Language::Java: return "java";
    case Language::JavaScript: return "javascript";
    case Language::Python: return "python";
    case Language::Other: return "other";
  }
  return "other";
}

Language parse_language(std::string_view name) {
  std::string n = text::to_lower_ascii(text::trim(name));
  if (n == "csharp" || n == "c#" || n == "cs") return Language::CSharp;
  if (n == "java") return Language::Java;
  if (n == "javascript" || n == "js") return Language::JavaScript;
  if (n == "python" || n == "py") return Language::Python;
  if (n == "other") return Language::Other;
  throw InvalidArgument("unknown language '" + std::string(name) + "'");
}

std::string_view label_name(QualityLabel label) {
  return label == QualityLabel::Promoted ? "promoted" : "discouraged";
}

QualityLabel parse_label(std::string_view name) {
  if (name == "promoted") return QualityLabel::Promoted;
  if (name == "discouraged") return QualityLabel::Discouraged;
  throw FormatError("unknown label '" + std::string(name) + "'");
}

Date parse_date(std::string_view s) {
  std::string t = text::trim(s);
  if (t.size() < 10 || t[4] != '-' || t[7] != '-' || (t.size() > 10 && t[10] != 'T' && t[10] != ' '))
    throw FormatError("bad date '" + t + "'");
  Date d{static_cast<int>(text::parse_int(t.substr(0, 4))), static_cast<int>(text::parse_int(t.substr(5, 2))),
         static_cast<int>(text::parse_int(t.substr(8, 2)))};
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) throw FormatError("bad date '" + t + "'");
  return d;
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

Language language_from_tags(std::span<const std::string> tags) {
  for (const auto& t : tags) {
    if (t == "c#") return Language::CSharp;
    if (t == "java") return Language::Java;
    if (t == "javascript") return Language::JavaScript;
    if (t == "python") return Language::Python;
  }
  return Language::Other;
}

QualityLabel label(const Question& q) {
  if (q.score > 0) return QualityLabel::Promoted;
  if (q.score < 0) return QualityLabel::Discouraged;
  throw UnlabelableError("question " + std::to_string(q.id) + " has score 0");
}

bool FilterSpec::accepts(const Question& q) const {
  if (q.answer_count < min_answers) return false;
  if (exclude_zero_score && q.score == 0) return false;
  if (q.creation_date.year > max_year) return false;
  return languages.count(q.language) != 0;
}

InputFormat parse_format(std::string_view name) {
  if (name == "dump_posts" || name == "dump") return InputFormat::DumpPosts;
  if (name == "record_lines" || name == "records") return InputFormat::RecordLines;
  throw InvalidArgument("unknown input format '" + std::string(name) + "'");
}

std::vector<std::string> normalize_tags(const std::vector<std::string>& raw) {
  std::vector<std::string> tags;
  for (const auto& t : raw) {
    std::string x = text::to_lower_ascii(text::trim(t));
    if (!x.empty()) tags.push_back(std::move(x));
  }
  if (tags.empty() || tags.size() > 5)
    throw FormatError("a question needs 1 to 5 tags, got " + std::to_string(tags.size()));
  return tags;
}

namespace {

std::int64_t json_int(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_string()) return text::parse_int(v.get<std::string>());
  throw FormatError(std::string("field '") + key + "' is not an integer");
}

}  // namespace

Question parse_record_line(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("record is not a JSON object");
  try {
    Question q;
    q.id = json_int(j, "id");
    if (q.id <= 0) throw FormatError("id must be positive");
    q.title = j.at("title").get<std::string>();
    q.body = j.at("body").get<std::string>();
    q.tags = normalize_tags(text::split(j.at("tags").get<std::string>(), ';'));
    q.score = json_int(j, "score");
    q.answer_count = json_int(j, "answer_count");
    if (q.answer_count < 0) throw FormatError("answer_count must be non-negative");
    q.creation_date = parse_date(j.at("creation_date").get<std::string>());
    q.language = language_from_tags(q.tags);
    return q;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad record field: ") + e.what());
  }
}

std::string to_record_line(const Question& q) {
  std::string tags;
  for (std::size_t i = 0; i < q.tags.size(); ++i) tags += (i ? ";" : "") + q.tags[i];
  nlohmann::ordered_json j;
  j["id"] = q.id;
  j["title"] = q.title;
  j["body"] = q.body;
  j["tags"] = tags;
  j["score"] = q.score;
  j["answer_count"] = q.answer_count;
  j["creation_date"] = format_date(q.creation_date);
  return j.dump();
}

}  // namespace qqual::corpus
