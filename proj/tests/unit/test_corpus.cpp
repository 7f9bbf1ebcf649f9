#include <algorithm>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "qqual/corpus.hpp"
#include "qqual/error.hpp"
#include "qqual/random.hpp"
#include "qqual/text.hpp"
#include "temp_dir.hpp"

using namespace qqual;
using namespace qqual::corpus;

namespace {

Question make_question(std::int64_t id, std::int64_t score, std::int64_t answers, int year,
                       std::vector<std::string> tags = {"java"}) {
  Question q;
  q.id = id;
  q.title = "Title " + std::to_string(id);
  q.body = "<p>body</p>";
  q.tags = std::move(tags);
  q.score = score;
  q.answer_count = answers;
  q.creation_date = {year, 6, 1};
  q.language = language_from_tags(q.tags);
  return q;
}

std::string record(const Question& q) { return to_record_line(q); }

}  // namespace

TEST_CASE("label follows the sign of the score") {
  CHECK(label(make_question(1, 5, 1, 2015)) == QualityLabel::Promoted);
  CHECK(label(make_question(1, -2, 1, 2015)) == QualityLabel::Discouraged);
  CHECK_THROWS_AS(label(make_question(1, 0, 1, 2015)), UnlabelableError);
}

TEST_CASE("filters") {
  FilterSpec f;
  CHECK(f.accepts(make_question(1, 3, 2, 2016)));
  CHECK_FALSE(f.accepts(make_question(1, 0, 2, 2016)));
  CHECK_FALSE(f.accepts(make_question(1, 3, 0, 2016)));
  CHECK_FALSE(f.accepts(make_question(1, 3, 2, 2018)));
  CHECK(f.accepts(make_question(1, 3, 2, 2017)));
  CHECK_FALSE(f.accepts(make_question(1, 3, 2, 2016, {"haskell"})));

  f.exclude_zero_score = false;
  CHECK(f.accepts(make_question(1, 0, 2, 2016)));
}

TEST_CASE("three-row year fixture keeps only the pre-cutoff row") {
  std::stringstream in;
  in << record(make_question(1, 4, 1, 2016)) << "\n"
     << record(make_question(2, 4, 1, 2018)) << "\n"
     << record(make_question(3, 4, 1, 2019)) << "\n";
  auto r = load_corpus_stream(in, InputFormat::RecordLines, FilterSpec{});
  REQUIRE(r.questions.size() == 1);
  CHECK(r.questions[0].id == 1);
  CHECK(r.rows_read == 3);
  CHECK(r.filtered_out == 2);
}

TEST_CASE("malformed rows are skipped with a warning") {
  std::stringstream in;
  in << record(make_question(1, 4, 1, 2016)) << "\n"
     << "{not json\n"
     << R"({"id": 9, "title": "t", "body": "", "tags": "", "score": 1, "answer_count": 1, "creation_date": "2015-01-01"})"
     << "\n";
  auto r = load_corpus_stream(in, InputFormat::RecordLines, FilterSpec{});
  CHECK(r.questions.size() == 1);
  CHECK(r.malformed_rows == 2);
  CHECK(r.warnings.size() == 2);
}

TEST_CASE("empty result is an error") {
  std::stringstream in;
  in << record(make_question(1, 0, 1, 2016)) << "\n";
  CHECK_THROWS_AS(load_corpus_stream(in, InputFormat::RecordLines, FilterSpec{}), EmptyCorpusError);
}

TEST_CASE("record line round trip") {
  Question q = make_question(77, -3, 4, 2012, {"python", "pandas"});
  q.title = "Quote \" and, comma";
  q.body = "<p>line\nbreak</p>";
  Question back = parse_record_line(to_record_line(q));
  CHECK(back.id == q.id);
  CHECK(back.title == q.title);
  CHECK(back.body == q.body);
  CHECK(back.tags == q.tags);
  CHECK(back.score == q.score);
  CHECK(back.creation_date == q.creation_date);
  CHECK(back.language == Language::Python);
}

TEST_CASE("language comes from the first studied tag") {
  std::vector<std::string> tags{"android", "java", "python"};
  CHECK(language_from_tags(tags) == Language::Java);
  std::vector<std::string> cs{"c#", ".net"};
  CHECK(language_from_tags(cs) == Language::CSharp);
  std::vector<std::string> none{"rust"};
  CHECK(language_from_tags(none) == Language::Other);
}

TEST_CASE("body extraction") {
  Question q = make_question(1, 1, 1, 2015);
  q.title = "T";
  q.body = "<p>hi</p><pre><code>x=1</code></pre>";
  auto c = extract_content(q);
  CHECK(c.prose == "T hi");
  REQUIRE(c.code_blocks.size() == 1);
  CHECK(c.code_blocks[0] == "x=1");
  CHECK(c.prose_length == 4);
  CHECK(c.code_length == 3);

  q.body = "use <code>foo()</code> here";
  c = extract_content(q);
  CHECK(c.prose.find("foo()") != std::string::npos);
  CHECK(c.code_blocks.empty());

  q.body = "&lt;b&gt;";
  c = extract_content(q);
  CHECK(c.prose.find("<b>") != std::string::npos);
}

TEST_CASE("extraction tolerates unclosed elements") {
  auto b = extract_body("<p>text<pre><code>int x;");
  CHECK(b.text == "text");
  REQUIRE(b.code_blocks.size() == 1);
  CHECK(b.code_blocks[0] == "int x;");
}

TEST_CASE("entity decoding") {
  CHECK(decode_entities("a &amp; b") == "a & b");
  CHECK(decode_entities("&#65;&#x42;") == "AB");
  CHECK(decode_entities("&bogus;") == "&bogus;");
}

TEST_CASE("extracted length never exceeds the input") {
  Rng rng(5);
  const std::vector<std::string> parts{"<p>", "</p>", "<pre><code>", "</code></pre>", "<code>", "</code>", "&amp;",
                                       "&lt;", " ", "\n", "word", "é", "<br/>", "x=1;", "<a href=\"u\">", "</a>"};
  for (int trial = 0; trial < 300; ++trial) {
    Question q = make_question(1, 1, 1, 2015);
    q.title = "t" + std::to_string(trial);
    q.body.clear();
    std::size_t n = uniform_index(rng, 20);
    for (std::size_t i = 0; i < n; ++i) q.body += parts[uniform_index(rng, parts.size())];
    auto c = extract_content(q);
    std::size_t bound = text::decode_utf8(q.title).size() + text::decode_utf8(decode_entities(q.body)).size() + 1;
    CHECK(c.prose_length + c.code_length <= bound);
  }
}

TEST_CASE("tag table") {
  std::vector<Question> qs{make_question(1, 1, 1, 2015, {"a", "b"}), make_question(2, 1, 1, 2015, {"a"})};
  auto t = build_tag_table(qs);
  CHECK(t.count("a") == 2);
  CHECK(t.count("b") == 1);
  CHECK(t.total() == 3);
  CHECK(t.probability("a") == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(t.probability("zzz"), InvalidArgument);

  std::vector<Question> one{make_question(1, 1, 1, 2015, {"x"})};
  CHECK(build_tag_table(one).probability("x") == 1.0);
}

TEST_CASE("tag probabilities sum to one") {
  Rng rng(9);
  std::vector<Question> qs;
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> tags;
    std::size_t n = 1 + uniform_index(rng, 5);
    for (std::size_t k = 0; k < n; ++k) tags.push_back("t" + std::to_string(uniform_index(rng, 37)));
    qs.push_back(make_question(i, 1, 1, 2015, tags));
  }
  auto t = build_tag_table(qs);
  double sum = 0;
  for (const auto& [tag, _] : t.counts()) sum += t.probability(tag);
  CHECK(std::abs(sum - 1.0) < 1e-12);
}

TEST_CASE("tag table file round trip") {
  TempDir dir;
  TagFrequencyTable t;
  t.add("java", 10);
  t.add("c#", 3);
  t.save(dir.file("tags.tsv"));
  auto back = TagFrequencyTable::load(dir.file("tags.tsv"));
  CHECK(back.counts() == t.counts());
  CHECK(back.total() == 13);
}

TEST_CASE("undersampling") {
  std::vector<QualityLabel> labels(100, QualityLabel::Promoted);
  labels.insert(labels.end(), 30, QualityLabel::Discouraged);
  auto idx = undersample_indices(labels, 7);
  CHECK(idx.size() == 60);
  CHECK(std::is_sorted(idx.begin(), idx.end()));
  CHECK(std::adjacent_find(idx.begin(), idx.end()) == idx.end());
  auto promoted = std::count_if(idx.begin(), idx.end(), [&](auto i) { return labels[i] == QualityLabel::Promoted; });
  CHECK(promoted == 30);
  CHECK(undersample_indices(labels, 7) == idx);

  std::vector<QualityLabel> balanced(50, QualityLabel::Promoted);
  balanced.insert(balanced.end(), 50, QualityLabel::Discouraged);
  std::vector<std::size_t> all(100);
  std::iota(all.begin(), all.end(), 0);
  CHECK(undersample_indices(balanced, 3) == all);

  std::vector<QualityLabel> one_class(5, QualityLabel::Promoted);
  CHECK_THROWS_AS(undersample_indices(one_class, 1), InvalidArgument);
}

TEST_CASE("undersample output is balanced for random inputs") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<QualityLabel> labels;
    std::size_t n = 2 + uniform_index(rng, 80);
    for (std::size_t i = 0; i < n; ++i)
      labels.push_back(uniform_index(rng, 3) == 0 ? QualityLabel::Discouraged : QualityLabel::Promoted);
    labels[0] = QualityLabel::Promoted;
    labels[1] = QualityLabel::Discouraged;
    auto idx = undersample_indices(labels, trial);
    std::size_t p = 0;
    for (auto i : idx) {
      REQUIRE(i < n);
      p += labels[i] == QualityLabel::Promoted;
    }
    CHECK(2 * p == idx.size());
  }
}

TEST_CASE("loaded questions satisfy every filter") {
  Rng rng(3);
  std::stringstream in;
  for (int i = 0; i < 400; ++i) {
    auto score = static_cast<std::int64_t>(uniform_index(rng, 7)) - 3;
    auto answers = static_cast<std::int64_t>(uniform_index(rng, 3));
    int year = 2010 + static_cast<int>(uniform_index(rng, 10));
    const char* langs[] = {"java", "c#", "python", "javascript", "ruby"};
    in << record(make_question(i + 1, score, answers, year, {langs[uniform_index(rng, 5)]})) << "\n";
  }
  FilterSpec f;
  auto r = load_corpus_stream(in, InputFormat::RecordLines, f);
  CHECK(r.questions.size() + r.filtered_out == 400);
  for (const auto& q : r.questions) {
    CHECK(f.accepts(q));
    CHECK(q.score != 0);
    CHECK_NOTHROW(label(q));
  }
}

TEST_CASE("bundled fixture loads in both formats") {
  std::string dir = std::string(QQUAL_DATA_DIR) + "/fixture/";
  auto lines = load_corpus(dir + "questions.jsonl", InputFormat::RecordLines, FilterSpec{});
  CHECK(lines.rows_read == 1002);
  CHECK(lines.malformed_rows == 2);
  CHECK(lines.questions.size() > 800);

  auto dump = load_corpus(dir + "posts_sample.xml", InputFormat::DumpPosts, FilterSpec{});
  CHECK_FALSE(dump.questions.empty());
  for (const auto& q : dump.questions) {
    CHECK(q.language != Language::Other);
    CHECK_FALSE(q.tags.empty());
  }
  // Both formats describe the same leading questions.
  auto it = std::find_if(lines.questions.begin(), lines.questions.end(),
                         [&](const Question& q) { return q.id == dump.questions[0].id; });
  REQUIRE(it != lines.questions.end());
  CHECK(it->title == dump.questions[0].title);
  CHECK(it->body == dump.questions[0].body);
  CHECK(it->tags == dump.questions[0].tags);
}

TEST_CASE("corpus csv round trip") {
  TempDir dir;
  std::vector<Question> qs{make_question(1, 2, 1, 2014, {"java", "spring"}),
                           make_question(2, -1, 3, 2016, {"python"})};
  qs[0].body = "<p>a, \"quoted\"\nline</p>";
  write_corpus_csv(dir.file("c.csv"), qs);
  auto back = read_corpus_csv(dir.file("c.csv"));
  REQUIRE(back.size() == 2);
  CHECK(back[0].body == qs[0].body);
  CHECK(back[0].tags == qs[0].tags);
  CHECK(back[1].score == -1);
  CHECK(back[1].language == Language::Python);
}
