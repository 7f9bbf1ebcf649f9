#include "qqual/codeparse.hpp"
#include "qqual/error.hpp"

namespace qqual::codeparse {

MergedSnippet merge_blocks(std::span<const std::string> blocks, Language language) {
  if (blocks.empty()) throw InvalidArgument("question has no code blocks");
  MergedSnippet m;
  m.language = language;
  m.block_count = blocks.size();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    std::string_view b = blocks[i];
    while (!b.empty() && (b.back() == '\n' || b.back() == '\r')) b.remove_suffix(1);
    if (i) m.source += '\n';
    m.source += b;
  }
  return m;
}

MergedSnippet merge_snippets(const corpus::QuestionContent& content, Language language) {
  return merge_blocks(content.code_blocks, language);
}

}  // namespace qqual::codeparse
