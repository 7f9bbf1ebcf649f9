#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qqual::codeparse::detail {

enum class TokKind { Identifier, Keyword, Number, String, Char, Template, Regex, Punct, Newline, Indent, Dedent, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  std::size_t offset = 0;
  std::size_t line = 1;
  std::size_t col = 1;
  bool newline_before = false;
  // Source of each ${...} hole of a JavaScript template literal.
  std::vector<std::string> holes;
};

struct LexError {
  std::size_t line;
  std::size_t col;
  std::string message;
};

// All lexers throw LexError on unterminated literals/comments or stray characters.
// Java and C# emit every '>' as its own token so nested generic closers need no
// splitting; the parsers recombine adjacent '>' into shift/compare operators.
std::vector<Token> lex_java(std::string_view src);
std::vector<Token> lex_csharp(std::string_view src);
std::vector<Token> lex_javascript(std::string_view src);
// Emits Newline/Indent/Dedent per the offside rule.
std::vector<Token> lex_python(std::string_view src);

}  // namespace qqual::codeparse::detail
