#include "parser_base.hpp"

namespace qqual::codeparse::detail {

std::size_t ParserBase::matching_close(std::size_t ahead) const {
  int depth = 0;
  for (std::size_t i = pos_ + ahead; i < toks_.size(); ++i) {
    const Token& t = toks_[i];
    if (t.kind != TokKind::Punct) continue;
    if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
    if (t.text == ")" || t.text == "]" || t.text == "}") {
      if (--depth == 0) return i - pos_;
      if (depth < 0) return std::string::npos;
    }
  }
  return std::string::npos;
}

}  // namespace qqual::codeparse::detail
