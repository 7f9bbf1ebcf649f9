#include "qqual/corpus.hpp"
#include "qqual/csv.hpp"
#include "qqual/text.hpp"

namespace qqual::corpus {

namespace {
const csv::Row kHeader{"id", "title", "body", "tags", "score", "answer_count", "creation_date", "language", "label"};
}

void write_corpus_csv(const std::string& path, std::span<const Question> corpus) {
  csv::Table t;
  t.header = kHeader;
  for (const auto& q : corpus) {
    std::string tags;
    for (std::size_t i = 0; i < q.tags.size(); ++i) tags += (i ? ";" : "") + q.tags[i];
    t.rows.push_back({std::to_string(q.id), q.title, q.body, tags, std::to_string(q.score),
                      std::to_string(q.answer_count), format_date(q.creation_date),
                      std::string(language_name(q.language)), std::string(label_name(label(q)))});
  }
  csv::write_file(path, t);
}

std::vector<Question> read_corpus_csv(const std::string& path) {
  auto t = csv::read_file(path);
  const auto id = t.column("id"), title = t.column("title"), body = t.column("body"), tags = t.column("tags"),
             score = t.column("score"), answers = t.column("answer_count"), date = t.column("creation_date"),
             lang = t.column("language");
  std::vector<Question> out;
  out.reserve(t.rows.size());
  for (const auto& r : t.rows) {
    Question q;
    q.id = text::parse_int(r[id]);
    q.title = r[title];
    q.body = r[body];
    q.tags = text::split(r[tags], ';');
    q.score = text::parse_int(r[score]);
    q.answer_count = text::parse_int(r[answers]);
    q.creation_date = parse_date(r[date]);
    q.language = parse_language(r[lang]);
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace qqual::corpus
