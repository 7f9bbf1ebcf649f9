#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qqual::corpus {

enum class Language { CSharp, Java, JavaScript, Python, Other };

std::string_view language_name(Language lang);
// Accepts the names produced by language_name ("csharp", "java", ...) and the tag
// spellings ("c#"). Throws InvalidArgument otherwise.
Language parse_language(std::string_view name);
inline constexpr Language kStudiedLanguages[] = {Language::CSharp, Language::Java,
                                                 Language::JavaScript, Language::Python};

enum class QualityLabel { Promoted, Discouraged };

std::string_view label_name(QualityLabel label);
QualityLabel parse_label(std::string_view name);

struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;
  auto operator<=>(const Date&) const = default;
};

// Parses "YYYY-MM-DD" optionally followed by a time part ("T..." or " ...").
Date parse_date(std::string_view s);
std::string format_date(const Date& d);

struct Question {
  std::int64_t id = 0;
  std::string title;
  std::string body;  // HTML fragment
  std::vector<std::string> tags;
  std::int64_t score = 0;
  std::int64_t answer_count = 0;
  Date creation_date;
  Language language = Language::Other;
};

// First tag among c#, java, javascript, python decides; Other when none match.
Language language_from_tags(std::span<const std::string> tags);

QualityLabel label(const Question& q);

struct FilterSpec {
  std::int64_t min_answers = 1;
  bool exclude_zero_score = true;
  int max_year = 2017;
  std::set<Language> languages{Language::CSharp, Language::Java, Language::JavaScript,
                               Language::Python};

  bool accepts(const Question& q) const;
};

enum class InputFormat { DumpPosts, RecordLines };
InputFormat parse_format(std::string_view name);

struct LoadResult {
  std::vector<Question> questions;
  std::size_t rows_read = 0;
  std::size_t malformed_rows = 0;
  std::size_t filtered_out = 0;
  std::vector<std::string> warnings;  // one per malformed row, prefixed with its row number
};

// Reads every row, skips malformed ones with a warning, keeps questions passing
// `filters` in order of appearance. Throws IoError when the file cannot be read and
// EmptyCorpusError when nothing survives.
LoadResult load_corpus(const std::string& path, InputFormat format, const FilterSpec& filters);
LoadResult load_corpus_stream(std::istream& in, InputFormat format, const FilterSpec& filters);

// Parses one record_lines line (a JSON object). Throws FormatError when malformed.
Question parse_record_line(std::string_view line);
std::string to_record_line(const Question& q);

struct QuestionContent {
  std::string prose;       // title + " " + body text, whitespace collapsed
  std::string body_prose;  // body text alone
  std::vector<std::string> code_blocks;
  std::size_t prose_length = 0;  // code points in prose
  std::size_t code_length = 0;   // code points over all blocks

  bool has_code() const { return !code_blocks.empty(); }
};

// Decodes named and numeric HTML character references. Unknown references are kept verbatim.
std::string decode_entities(std::string_view s);

struct ExtractedBody {
  std::string text;  // tags stripped, entities decoded, whitespace collapsed
  std::vector<std::string> code_blocks;
};

// Tolerant single pass over an HTML fragment: <code> nested in <pre> becomes a
// code block, every other tag is stripped, unclosed elements close at the end.
ExtractedBody extract_body(std::string_view html);
QuestionContent extract_content(const Question& q);

class TagFrequencyTable {
 public:
  TagFrequencyTable() = default;

  void add(const std::string& tag, std::uint64_t count = 1);
  std::uint64_t count(const std::string& tag) const;
  bool contains(const std::string& tag) const { return counts_.count(tag) != 0; }
  std::uint64_t total() const { return total_; }
  std::size_t size() const { return counts_.size(); }
  const std::map<std::string, std::uint64_t>& counts() const { return counts_; }

  // F_i / sum F. Throws InvalidArgument for an unknown tag.
  double probability(const std::string& tag) const;

  // "tag<TAB>count" lines, sorted by tag.
  static TagFrequencyTable load(const std::string& path);
  void save(const std::string& path) const;

 private:
  std::map<std::string, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

TagFrequencyTable build_tag_table(std::span<const Question> corpus);

// Indices of a class-balanced subset: the majority class is reduced without
// replacement to the minority size, the minority is kept whole. Indices come back
// in ascending order. Throws InvalidArgument when a class is absent.
std::vector<std::size_t> undersample_indices(std::span<const QualityLabel> labels, std::uint64_t seed);

template <typename T, typename LabelOf>
std::vector<T> undersample(std::span<const T> rows, LabelOf label_of, std::uint64_t seed) {
  std::vector<QualityLabel> labels;
  labels.reserve(rows.size());
  for (const auto& r : rows) labels.push_back(label_of(r));
  std::vector<T> out;
  for (auto i : undersample_indices(labels, seed)) out.push_back(rows[i]);
  return out;
}

// Labeled corpus persistence:
// id,title,body,tags,score,answer_count,creation_date,language,label
// with tags joined by ';'.
void write_corpus_csv(const std::string& path, std::span<const Question> corpus);
std::vector<Question> read_corpus_csv(const std::string& path);

}  // namespace qqual::corpus
