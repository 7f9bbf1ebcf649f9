#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "doctest.h"
#include "json.hpp"
#include "qqual/csv.hpp"
#include "qqual/stats.hpp"
#include "temp_dir.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kFixture = std::string(QQUAL_DATA_DIR) + "/fixture/questions.jsonl";

struct RunResult {
  int code = -1;
  std::string err;
};

RunResult run(const TempDir& dir, const std::string& args) {
  std::string err_file = dir.file("stderr.txt");
  std::string cmd = std::string(QQUAL_CLI) + " " + args + " 2> \"" + err_file + "\" > /dev/null";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err_file);
  return r;
}

// Forty java-only questions: promoted titles repeat words from the body, discouraged
// titles share nothing with it.
std::string small_corpus() {
  std::string out;
  for (int i = 0; i < 40; ++i) {
    bool promoted = i % 2 == 0;
    nlohmann::json j;
    j["id"] = 100 + i;
    j["title"] = promoted ? "sorting list number" + std::to_string(i) : "help urgent x" + std::to_string(i);
    std::string words;
    for (int k = 0; k <= i % 7; ++k) words += " considerably";
    j["body"] = "<p>I am sorting list number" + std::to_string(i) + words + " today. Why?</p><pre><code>int v = " +
                std::to_string(i * 13) + ";</code></pre>";
    j["tags"] = "java";
    j["score"] = promoted ? 3 + i : -1 - i;
    j["answer_count"] = 1;
    j["creation_date"] = "2016-03-0" + std::to_string(1 + i % 9);
    out += j.dump() + "\n";
  }
  return out;
}

std::map<std::string, std::string> read_all(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = slurp(e.path().string());
  return files;
}

}  // namespace

TEST_CASE("ingest summary matches a hand count of the fixture") {
  TempDir dir;
  auto r = run(dir, "ingest --input " + kFixture + " --out " + dir.file("out"));
  REQUIRE(r.code == 0);

  std::map<std::string, std::array<int, 2>> expected;
  std::ifstream in(kFixture);
  std::string line;
  const std::set<std::string> studied{"c#", "java", "javascript", "python"};
  const std::map<std::string, std::string> names{
      {"c#", "csharp"}, {"java", "java"}, {"javascript", "javascript"}, {"python", "python"}};
  while (std::getline(in, line)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      if (!j.is_object() || !j.contains("tags") || !j["score"].is_number_integer()) continue;
      if (j["id"].get<long long>() <= 0) continue;
    } catch (const std::exception&) {
      continue;
    }
    std::string tags = j["tags"].get<std::string>(), lang;
    std::stringstream ts(tags);
    for (std::string t; std::getline(ts, t, ';');)
      if (lang.empty() && studied.count(t)) lang = names.at(t);
    long long score = j["score"], answers = j["answer_count"];
    int year = std::stoi(j["creation_date"].get<std::string>().substr(0, 4));
    if (lang.empty() || score == 0 || answers < 1 || year > 2017) continue;
    ++expected[lang][score > 0 ? 0 : 1];
  }

  auto t = qqual::csv::read_file(dir.file("out/summary.csv"));
  CHECK(t.header == qqual::csv::Row{"language", "promoted", "discouraged", "total"});
  int total_p = 0, total_d = 0;
  for (const auto& row : t.rows) {
    if (row[0] == "total") {
      CHECK(std::stoi(row[1]) == total_p);
      CHECK(std::stoi(row[2]) == total_d);
      continue;
    }
    CAPTURE(row[0]);
    CHECK(std::stoi(row[1]) == expected[row[0]][0]);
    CHECK(std::stoi(row[2]) == expected[row[0]][1]);
    CHECK(std::stoi(row[3]) == expected[row[0]][0] + expected[row[0]][1]);
    total_p += std::stoi(row[1]);
    total_d += std::stoi(row[2]);
  }
  CHECK(total_p + total_d > 800);
}

TEST_CASE("an empty filtered corpus fails with a message") {
  TempDir dir;
  auto input = dir.write("zero.jsonl", R"({"id": 1, "title": "t", "body": "<p>b</p>", "tags": "java", "score": 0, "answer_count": 2, "creation_date": "2015-01-01"})"
                                       "\n");
  auto r = run(dir, "ingest --input " + input + " --out " + dir.file("out"));
  CHECK(r.code != 0);
  CHECK(r.err.find("error:") != std::string::npos);

  auto missing = run(dir, "ingest --input " + dir.file("nope.jsonl") + " --out " + dir.file("out"));
  CHECK(missing.code != 0);
  auto bad_key = run(dir, "ingest --set colour=blue --input " + input);
  CHECK(bad_key.code != 0);
}

TEST_CASE("reruns are byte-identical") {
  TempDir dir;
  for (const char* name : {"a", "b"}) {
    std::string out = " --out " + dir.file(name) + " --seed 7";
    REQUIRE(run(dir, "ingest --input " + kFixture + out).code == 0);
    REQUIRE(run(dir, "metrics" + out).code == 0);
    REQUIRE(run(dir, "compare" + out).code == 0);
    REQUIRE(run(dir, "rank" + out).code == 0);
    REQUIRE(run(dir, "train --model random_forest --hyperparams 'n_trees=20;max_depth=8'" + out).code == 0);
  }
  auto a = read_all(dir.file("a")), b = read_all(dir.file("b"));
  CHECK(a.size() >= 15);
  REQUIRE(a.size() == b.size());
  for (const auto& [name, content] : a) {
    CAPTURE(name);
    REQUIRE(b.count(name));
    CHECK(content == b.at(name));
  }

  auto header = qqual::csv::read_file(dir.file("a/comparison.csv")).header;
  CHECK(header == qqual::csv::Row{"metric", "scope", "n_promoted", "n_discouraged", "n_dropped", "median_promoted",
                                  "median_discouraged", "u", "z", "p", "exact", "significant", "cliffs_d",
                                  "magnitude", "comparable"});
  CHECK(header == qqual::stats::comparison_header());
}

TEST_CASE("compare reports constant and disjoint metrics") {
  TempDir dir;
  auto input = dir.write("small.jsonl", small_corpus());
  std::string out = " --out " + dir.file("out");
  REQUIRE(run(dir, "ingest --input " + input + out).code == 0);
  REQUIRE(run(dir, "metrics" + out).code == 0);
  REQUIRE(run(dir, "compare" + out).code == 0);
  auto t = qqual::csv::read_file(dir.file("out/comparison.csv"));
  auto find = [&](const std::string& metric) {
    for (const auto& row : t.rows)
      if (row[0] == metric && row[1] == "overall") return row;
    FAIL("metric missing: " << metric);
    return qqual::csv::Row{};
  };
  auto te = find("te");
  CHECK(te[t.column("cliffs_d")] == "0");
  CHECK(te[t.column("p")] == "1");
  auto tq = find("tq");
  CHECK(tq[t.column("cliffs_d")] == "1");
  CHECK(tq[t.column("magnitude")] == "large");
  CHECK(tq[t.column("significant")] == "1");
}

TEST_CASE("train then predict memorizes the training rows") {
  TempDir dir;
  auto input = dir.write("small.jsonl", small_corpus());
  std::string out = " --out " + dir.file("out");
  REQUIRE(run(dir, "ingest --input " + input + out).code == 0);
  REQUIRE(run(dir, "metrics" + out).code == 0);
  auto train = run(dir, "train --model decision_tree --hyperparams max_depth=0 --imbalanced --features top4" + out);
  REQUIRE(train.code == 0);
  REQUIRE(run(dir, "predict --record " + input + out).code == 0);

  auto pred = qqual::csv::read_file(dir.file("out/predictions.csv"));
  CHECK(pred.header == qqual::csv::Row{"id", "label", "score_promoted", "score_discouraged"});
  REQUIRE(pred.rows.size() == 40);
  for (const auto& row : pred.rows) {
    int i = std::stoi(row[0]) - 100;
    CHECK(row[1] == (i % 2 == 0 ? "promoted" : "discouraged"));
  }

  auto mismatch = run(dir, "predict --features all --record " + input + out);
  CHECK(mismatch.code != 0);
  CHECK(mismatch.err.find("model uses {te,tr,me,tcr,has_code}") != std::string::npos);
  CHECK(mismatch.err.find("requested {te,me,tcr,cr,tr") != std::string::npos);
}

TEST_CASE("outputs stay inside the output directory") {
  TempDir dir;
  auto input = dir.write("small.jsonl", small_corpus());
  auto before = read_all(dir.path());
  std::string out = " --out " + dir.file("out");
  REQUIRE(run(dir, "ingest --input " + input + out).code == 0);
  REQUIRE(run(dir, "metrics" + out).code == 0);
  auto after = read_all(dir.path());
  for (const auto& [name, content] : after) {
    if (before.count(name) || name == "stderr.txt") continue;
    CHECK(name.rfind("out/", 0) == 0);
  }
}
