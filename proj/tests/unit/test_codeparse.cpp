#include <cmath>
#include <thread>

#include "doctest.h"
#include "parsability_suite.hpp"
#include "qqual/codeparse.hpp"
#include "qqual/error.hpp"
#include "qqual/random.hpp"
#include "temp_dir.hpp"

using namespace qqual;
using namespace qqual::codeparse;
using corpus::Language;

namespace {
MergedSnippet snip(Language lang, std::string src) { return {lang, std::move(src), 1}; }
}  // namespace

TEST_CASE("merging blocks") {
  std::vector<std::string> ab{"a", "b"};
  auto m = merge_blocks(ab, Language::Java);
  CHECK(m.source == "a\nb");
  CHECK(m.block_count == 2);

  std::vector<std::string> one{"int x = 1;\nint y;"};
  CHECK(merge_blocks(one, Language::Java).source == one[0]);

  std::vector<std::string> trailing{"a\n\n", "b\n"};
  CHECK(merge_blocks(trailing, Language::Java).source == "a\nb");

  std::vector<std::string> none;
  CHECK_THROWS_AS(merge_blocks(none, Language::Java), InvalidArgument);
}

TEST_CASE("basic parse verdicts") {
  CHECK(check_parsable(snip(Language::Java, "class A {}")) == Parsability::Parsable);
  CHECK(check_parsable(snip(Language::Python, "x = 1")) == Parsability::Parsable);
  for (Language lang : corpus::kStudiedLanguages) {
    CAPTURE(corpus::language_name(lang));
    CHECK(check_parsable(snip(lang, "foo(")) == Parsability::Unparsable);
    auto v = parse_verdict(snip(lang, "foo("));
    CHECK_FALSE(v.errors.empty());
  }
}

TEST_CASE("parsing is deterministic across threads") {
  const auto& suite = parsability_suite();
  std::vector<int> first(suite.size()), second(suite.size());
  auto run = [&](std::vector<int>& out) {
    for (std::size_t i = 0; i < suite.size(); ++i)
      out[i] = check_parsable(snip(suite[i].language, suite[i].source)) == Parsability::Parsable;
  };
  std::thread a(run, std::ref(first)), b(run, std::ref(second));
  a.join();
  b.join();
  CHECK(first == second);
}

TEST_CASE("registry from config and serializing wrapper") {
  auto reg = BackendRegistry::from_config({{"java", "java-rd"}});
  CHECK(reg.has(Language::Java));
  CHECK_FALSE(reg.has(Language::Python));
  CHECK_THROWS_AS(reg.backend(Language::Python), InvalidArgument);
  CHECK_THROWS_AS(make_builtin_backend("nope"), InvalidArgument);
  CHECK(builtin_backend_names().size() == 4);

  struct Counting : ParserBackend {
    std::string_view name() const override { return "counting"; }
    bool reentrant() const override { return false; }
    ParseVerdict parse(std::string_view) const override { return {true, {}}; }
  };
  BackendRegistry r;
  r.register_backend(Language::Python, std::make_unique<Counting>());
  CHECK(r.backend(Language::Python).reentrant());
  CHECK(r.backend(Language::Python).name() == "counting");
  CHECK(check_parsable(snip(Language::Python, "((("), r) == Parsability::Parsable);
}

TEST_CASE("parsability rate") {
  std::vector<Parsability> one_of_four{Parsability::Parsable, Parsability::Unparsable, Parsability::Unparsable,
                                       Parsability::Unparsable};
  CHECK(parsability_rate(one_of_four) == 25.0);
  std::vector<Parsability> all(3, Parsability::Parsable);
  CHECK(parsability_rate(all) == 100.0);
  std::vector<Parsability> none;
  CHECK_THROWS_AS(parsability_rate(none), InvalidArgument);

  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    std::vector<Parsability> v(1 + uniform_index(rng, 40));
    double hits = 0;
    for (auto& p : v) {
      p = uniform_index(rng, 2) ? Parsability::Parsable : Parsability::Unparsable;
      hits += p == Parsability::Parsable;
    }
    CHECK(parsability_rate(v) == doctest::Approx(100.0 * hits / static_cast<double>(v.size())).epsilon(1e-12));
  }
}

TEST_CASE("readability features") {
  auto f = extract_readability_features(snip(Language::Java, "ab\ncd"));
  CHECK(f.avg_line_length == 2);
  CHECK(f.max_line_length == 2);
  CHECK(f.avg_identifier_length == 2);

  f = extract_readability_features(snip(Language::Java, "x\n\ny"));
  CHECK(f.blank_line_ratio == doctest::Approx(1.0 / 3.0));

  f = extract_readability_features(snip(Language::JavaScript, "// hi\nx=1"));
  CHECK(f.comment_line_ratio == 0.5);
  f = extract_readability_features(snip(Language::Python, "# hi\nx=1"));
  CHECK(f.comment_line_ratio == 0.5);

  f = extract_readability_features(snip(Language::Java, "if (a)\n  b();"));
  CHECK(f.branch_keyword_density == 0.5);
  CHECK(f.indentation_variance == 1.0);
  CHECK(f.paren_density == doctest::Approx(4.0 / 12.0));
}

TEST_CASE("readability scores") {
  Rng rng(8);
  const std::vector<std::string> pieces{"if (x) {", "}", "  return a.b(c);", "", "// note", "int value = 0;",
                                        "\tfor (i = 0; i < n; i++)", "x"};
  for (int t = 0; t < 50; ++t) {
    std::string src;
    std::size_t n = 1 + uniform_index(rng, 12);
    for (std::size_t i = 0; i < n; ++i) src += pieces[uniform_index(rng, pieces.size())] + "\n";
    src += "y";
    double s = code_readability(snip(Language::Java, src), ReadabilityWeights::zeros());
    CHECK(s == 0.5);
    double d = code_readability(snip(Language::Java, src), ReadabilityWeights::defaults());
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
  }

  // bias 2, line length 2 (x2 weights), identifier length 2, everything else 0
  double z = 2.0 - 0.04 * 2 - 0.01 * 2 - 0.05 * 2;
  CHECK(code_readability(snip(Language::Java, "ab\ncd"), ReadabilityWeights::defaults()) ==
        doctest::Approx(1.0 / (1.0 + std::exp(-z))).epsilon(1e-15));
}

TEST_CASE("readability moves with the sign of each weight") {
  ReadabilityFeatures base;
  base.avg_line_length = 20;
  base.max_line_length = 40;
  base.avg_identifier_length = 5;
  base.indentation_variance = 4;
  base.blank_line_ratio = 0.1;
  base.comment_line_ratio = 0.1;
  base.branch_keyword_density = 0.2;
  base.paren_density = 0.05;
  auto w = ReadabilityWeights::defaults();
  double s0 = code_readability(base, w);
  for (std::size_t i = 0; i < ReadabilityFeatures::kCount; ++i) {
    auto f = base;
    double* fields[] = {&f.avg_line_length,       &f.max_line_length,  &f.avg_identifier_length,
                        &f.indentation_variance,  &f.blank_line_ratio, &f.comment_line_ratio,
                        &f.branch_keyword_density, &f.paren_density};
    *fields[i] += 0.5;
    double s = code_readability(f, w);
    CAPTURE(ReadabilityFeatures::names()[i]);
    if (w.weights[i] > 0) CHECK(s > s0);
    if (w.weights[i] < 0) CHECK(s < s0);
  }
}

TEST_CASE("weights file") {
  TempDir dir;
  auto w = ReadabilityWeights::load(std::string(QQUAL_DATA_DIR) + "/code_readability_weights.tsv");
  CHECK(w.bias == ReadabilityWeights::defaults().bias);
  CHECK(w.weights == ReadabilityWeights::defaults().weights);

  auto bad = dir.write("bad.tsv", "bias\t1\nshoe_size\t2\n");
  CHECK_THROWS_AS(ReadabilityWeights::load(bad), FormatError);
  auto short_file = dir.write("short.tsv", "avg_line_length\t1\n");
  auto s = ReadabilityWeights::load(short_file);
  CHECK_THROWS_AS(code_readability(snip(Language::Java, "x"), s), InvalidArgument);
}

TEST_CASE("api call counting") {
  CHECK(count_api_calls("list.add(x); map.get(k);") == 2);
  CHECK(count_api_calls("x = 5") == 0);
  CHECK(count_api_calls("a.b(c.d())") == 2);
  CHECK(count_api_calls("foo(bar)") == 0);
  CHECK(count_api_calls("a.b.c(") == 1);
  CHECK(count_api_calls("3.x(") == 0);

  Rng rng(2);
  const std::vector<std::string> pieces{"obj.run(", ")", " ", "x", ";", "a.b", "(", "foo(", "s.t()", "1.5", "."};
  for (int t = 0; t < 200; ++t) {
    std::string a, b;
    for (std::size_t i = 0, n = uniform_index(rng, 8); i < n; ++i) a += pieces[uniform_index(rng, pieces.size())];
    for (std::size_t i = 0, n = uniform_index(rng, 8); i < n; ++i) b += pieces[uniform_index(rng, pieces.size())];
    CHECK(count_api_calls(a + "\n" + b) == count_api_calls(a) + count_api_calls(b));
  }
}
