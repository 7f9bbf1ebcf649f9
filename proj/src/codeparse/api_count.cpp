#include "qqual/codeparse.hpp"

namespace qqual::codeparse {

namespace {
bool word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}
bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
}  // namespace

// Scanner equivalent of the ECMAScript pattern \b[A-Za-z_]\w*\.[A-Za-z_]\w*\( applied
// with non-overlapping left-to-right search.
std::size_t count_api_calls(std::string_view s) {
  std::size_t count = 0;
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n) {
    if (!ident_start(s[i]) || (i > 0 && word_char(s[i - 1]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && word_char(s[j])) ++j;
    if (j + 1 < n && s[j] == '.' && ident_start(s[j + 1])) {
      std::size_t k = j + 1;
      while (k < n && word_char(s[k])) ++k;
      if (k < n && s[k] == '(') {
        ++count;
        i = k + 1;
        continue;
      }
    }
    // no match starting inside this word: the next candidate start is after it
    i = j;
  }
  return count;
}

}  // namespace qqual::codeparse
