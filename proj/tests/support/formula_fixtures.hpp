#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qqual/corpus.hpp"

// Hand-computed fixtures for the closed-form text metrics. Expected values are the
// exact doubles the formulas produce; `approx` is the decimal written down by hand
// and guards against the expected expression itself being mistyped.

struct RougeFixture {
  std::string reference, system;
  double expected;
};

inline const std::vector<RougeFixture>& rouge_fixtures() {
  static const std::vector<RougeFixture> f{
      {"sort list", "please sort my list now", 1.0},
      {"null pointer exception", "my code crashes", 0.0},
      {"parse json java", "how to parse a string", 1.0 / 3.0},
      {"Sort LIST", "sort list", 1.0},
      {"a b c d", "a b", 0.5},
      {"a a b", "a", 0.5},
      {"x-y z", "y", 1.0 / 3.0},
      {"one two three four five", "five one", 0.4},
      {"c# java", "c java", 1.0},
      {"read file line by line", "line", 0.25},
      {"a1 b2 c3", "a1 b2 c3 d4", 1.0},
      {"how do I sort a dict", "sort sort sort", 1.0 / 6.0},
  };
  return f;
}

struct RatioFixture {
  std::size_t code_length, prose_length;
  double expected;
};

inline const std::vector<RatioFixture>& ratio_fixtures() {
  static const std::vector<RatioFixture> f{
      {150, 300, 0.5},  {300, 150, 2.0},   {1, 3, 1.0 / 3.0}, {10, 10, 1.0},   {7, 2, 3.5},   {5, 8, 0.625},
      {100, 400, 0.25}, {3, 7, 3.0 / 7.0}, {1000, 1, 1000.0}, {12, 5, 2.4},    {1, 1000, 0.001},
  };
  return f;
}

struct EntropyFixture {
  std::string text;
  double expected;
};

// Dyadic frequency profiles, so every entropy is exact in binary.
inline const std::vector<EntropyFixture>& metric_entropy_fixtures() {
  static const std::vector<EntropyFixture> f{
      {"aaaa", 0.0},       {"abab", 0.25},   {"abcd", 0.5},     {"aabc", 0.375},   {"abcdefgh", 0.375},
      {"aabb", 0.25},      {"aaaabbcd", 0.21875}, {"ab", 0.5},   {"a", 0.0},        {"abcdabcd", 0.25},
      {"\xC3\xA9\xC3\xA9", 0.0}, {"\xC3\xA9" "a", 0.5},
  };
  return f;
}

struct TopicFixture {
  std::vector<std::string> tags;
  double expected;
  double approx;
};

// Table over ten tag uses: a 1, b 1, c 2, d 4, e 2.
inline qqual::corpus::TagFrequencyTable topic_fixture_table() {
  qqual::corpus::TagFrequencyTable t;
  t.add("a", 1);
  t.add("b", 1);
  t.add("c", 2);
  t.add("d", 4);
  t.add("e", 2);
  return t;
}

inline const std::vector<TopicFixture>& topic_entropy_fixtures() {
  static const double la = 0.1 * std::log(0.1), lc = 0.2 * std::log(0.2), ld = 0.4 * std::log(0.4);
  static const std::vector<TopicFixture> f{
      {{"a"}, -la, 0.2302585093},
      {{"a", "b"}, -(la + la) / 2.0, 0.2302585093},
      {{"b", "a"}, -(la + la) / 2.0, 0.2302585093},
      {{"d"}, -ld, 0.3665162927},
      {{"c"}, -lc, 0.3218875825},
      {{"c", "e"}, -(lc + lc) / 2.0, 0.3218875825},
      {{"a", "d"}, -(la + ld) / 2.0, 0.2983874010},
      {{"a", "c"}, -(la + lc) / 2.0, 0.2760730459},
      {{"d", "c", "a"}, -(ld + lc + la) / 3.0, 0.3062207948},
      {{"a", "b", "c", "d", "e"}, -(la + la + lc + ld + lc) / 5.0, 0.2941616953},
  };
  return f;
}

struct RixFixture {
  std::string text;
  double expected;
};

inline const std::vector<RixFixture>& rix_fixtures() {
  static const std::vector<RixFixture> f{
      {"I implemented serialization yesterday. It failed.", 15.0},
      {"Hi. Ok.", 0.0},
      {"Everything considered", 20.0},
      {"Serialization", 10.0},
      {"abcdefg abcdefg abcdefg abcdefg abcdefg abcdefg abcdefg abcdefg abcdefg abcdefg abcdefg abcdefg", 100.0},
      {"Short words only here.", 0.0},
      {"Complicated. Complicated. Simple.", 100.0 * (2.0 / 3.0) / 10.0},
      {"Paragraph one\n\nParagraph twooooo", 15.0},
      {"What happened?! Nothing.", 10.0},
      {"version 1.5 released", 20.0},
      {"Exceptions everywhere. Exceptions everywhere. Exceptions everywhere. Exceptions everywhere.", 20.0},
  };
  return f;
}
