#include <map>

#include "doctest.h"
#include "parsability_suite.hpp"
#include "qqual/codeparse.hpp"

using namespace qqual;

TEST_CASE("suite shape") {
  std::map<std::pair<corpus::Language, bool>, int> counts;
  for (const auto& s : parsability_suite()) ++counts[{s.language, s.valid}];
  CHECK(counts.size() == 8);
  for (const auto& [key, n] : counts) CHECK(n == 5);
}

TEST_CASE("every suite snippet gets the expected verdict") {
  for (const auto& s : parsability_suite()) {
    CAPTURE(corpus::language_name(s.language));
    CAPTURE(s.note);
    codeparse::MergedSnippet snippet{s.language, s.source, 1};
    auto verdict = codeparse::parse_verdict(snippet);
    std::string first_error = verdict.errors.empty() ? "" : verdict.errors.front().message;
    CAPTURE(first_error);
    CHECK(verdict.ok() == s.valid);
  }
}

TEST_CASE("appending (( breaks every valid suite snippet") {
  for (const auto& s : parsability_suite()) {
    if (!s.valid) continue;
    CAPTURE(s.note);
    codeparse::MergedSnippet broken{s.language, s.source + "\n((", 1};
    CHECK(codeparse::check_parsable(broken) == codeparse::Parsability::Unparsable);
  }
}
