#include <fstream>

#include "qqual/corpus.hpp"
#include "qqual/error.hpp"
#include "qqual/kv_file.hpp"
#include "qqual/text.hpp"

namespace qqual::corpus {

void TagFrequencyTable::add(const std::string& tag, std::uint64_t count) {
  if (count == 0) throw InvalidArgument("tag count must be positive: " + tag);
  counts_[tag] += count;
  total_ += count;
}

std::uint64_t TagFrequencyTable::count(const std::string& tag) const {
  auto it = counts_.find(tag);
  return it == counts_.end() ? 0 : it->second;
}

double TagFrequencyTable::probability(const std::string& tag) const {
  auto it = counts_.find(tag);
  if (it == counts_.end()) throw InvalidArgument("tag '" + tag + "' is not in the frequency table");
  return static_cast<double>(it->second) / static_cast<double>(total_);
}

TagFrequencyTable TagFrequencyTable::load(const std::string& path) {
  TagFrequencyTable t;
  for (const auto& kv : read_tab_file(path)) {
    auto n = text::parse_int(kv.value);
    if (n <= 0) throw FormatError(path + ":" + std::to_string(kv.line) + ": count must be positive");
    t.add(kv.key, static_cast<std::uint64_t>(n));
  }
  if (t.size() == 0) throw FormatError(path + ": empty tag table");
  return t;
}

void TagFrequencyTable::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& [tag, n] : counts_) out << tag << '\t' << n << '\n';
}

TagFrequencyTable build_tag_table(std::span<const Question> corpus) {
  if (corpus.empty()) throw EmptyCorpusError("cannot build a tag table from an empty corpus");
  TagFrequencyTable t;
  for (const auto& q : corpus)
    for (const auto& tag : q.tags) t.add(tag);
  return t;
}

}  // namespace qqual::corpus
