#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexer.hpp"

namespace qqual::codeparse::detail {

struct ParseFailure {
  std::size_t line;
  std::size_t col;
  std::string message;
};

// Token cursor shared by the recursive-descent parsers. Failure is signalled with
// ParseFailure; speculate() rewinds the cursor when an alternative does not match.
class ParserBase {
 public:
  explicit ParserBase(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

 protected:
  const Token& peek(std::size_t k = 0) const {
    std::size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& advance() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  bool at_end() const { return peek().kind == TokKind::End; }
  bool at_kind(TokKind k, std::size_t ahead = 0) const { return peek(ahead).kind == k; }
  // Punctuator or keyword with exactly this text.
  bool at(std::string_view text, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return (t.kind == TokKind::Punct || t.kind == TokKind::Keyword) && t.text == text;
  }
  // Identifier with this text (contextual keywords).
  bool at_word(std::string_view text, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokKind::Identifier && t.text == text;
  }
  bool accept(std::string_view text) {
    if (!at(text)) return false;
    advance();
    return true;
  }
  bool accept_word(std::string_view text) {
    if (!at_word(text)) return false;
    advance();
    return true;
  }
  void expect(std::string_view text) {
    if (!accept(text)) fail("expected '" + std::string(text) + "'");
  }
  std::string expect_identifier() {
    if (!at_kind(TokKind::Identifier)) fail("expected identifier");
    return advance().text;
  }

  // Whether tokens `i` and `i+1` (relative to the cursor) touch with no gap.
  bool adjacent(std::size_t ahead) const {
    const Token& a = peek(ahead);
    const Token& b = peek(ahead + 1);
    return a.offset + a.text.size() == b.offset;
  }

  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = peek();
    std::string near = t.kind == TokKind::End ? "end of input" : "'" + t.text + "'";
    throw ParseFailure{t.line, t.col, message + " near " + near};
  }

  template <typename F>
  bool speculate(F&& f) {
    std::size_t saved = pos_;
    try {
      f();
      return true;
    } catch (const ParseFailure&) {
      pos_ = saved;
      return false;
    }
  }

  // Index of the token matching the bracket at `ahead`, or npos.
  std::size_t matching_close(std::size_t ahead) const;

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace qqual::codeparse::detail
