// Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include "formula_fixtures.hpp"
#include "ml_oracles.hpp"
#include "parsability_suite.hpp"
#include "qqual/app.hpp"
#include "qqual/codeparse.hpp"
#include "qqual/metrics.hpp"
#include "qqual/ml.hpp"
#include "qqual/stats.hpp"
#include "qqual/text.hpp"
#include "stats_oracles.hpp"
#include "temp_dir.hpp"

using namespace qqual;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int number;
  std::string name;
  double limit_seconds;  // 0: no runtime bound
  std::function<Outcome()> body;
};

const std::string kFixture = std::string(QQUAL_DATA_DIR) + "/fixture/questions.jsonl";

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ------------------------------------------------------------ 1

Outcome information_gain_anchor() {
  double worst = 0;
  for (std::size_t n : {2, 10, 100, 1000, 4096}) {
    for (auto [lo, hi] : {std::pair{0.0, 1.0}, std::pair{-3.5, 7.25}}) {
      std::vector<ml::QualityLabel> y(n);
      std::vector<double> col(n);
      for (std::size_t i = 0; i < n; ++i) {
        y[i] = i % 2 ? ml::QualityLabel::Discouraged : ml::QualityLabel::Promoted;
        col[i] = y[i] == ml::QualityLabel::Promoted ? hi : lo;
      }
      worst = std::max(worst, std::fabs(ml::information_gain(col, y) - std::numbers::ln2));
    }
  }
  return {worst <= 1e-6, "max |IG - ln 2| = " + fmt(worst) + " nats"};
}

// ------------------------------------------------------------ 2

Outcome statistics_oracle() {
  Rng rng(2);
  int p_mismatch = 0, d_mismatch = 0, not_exact = 0;
  for (int t = 0; t < 500; ++t) {
    std::vector<double> a, b;
    std::size_t na = 1 + uniform_index(rng, 8), nb = 1 + uniform_index(rng, 8);
    if (t % 2) {
      a = tied_sample(rng, na);
      b = tied_sample(rng, nb);
    } else {
      for (std::size_t i = 0; i < na; ++i) a.push_back(uniform_unit(rng));
      for (std::size_t i = 0; i < nb; ++i) b.push_back(uniform_unit(rng));
    }
    auto r = stats::mann_whitney_u(a, b);
    not_exact += !r.exact;
    p_mismatch += r.p != brute_exact_p(a, b);
    d_mismatch += stats::cliffs_delta(a, b).d != brute_cliffs_d(a, b);
  }
  return {p_mismatch == 0 && d_mismatch == 0 && not_exact == 0,
          "500 pairs: " + std::to_string(p_mismatch) + " p mismatches, " + std::to_string(d_mismatch) +
              " delta mismatches, " + std::to_string(not_exact) + " not exact"};
}

// ------------------------------------------------------------ 3

Outcome formula_oracles() {
  std::map<std::string, std::pair<int, int>> tally;  // formula -> (fixtures, exact hits)
  for (const auto& f : rouge_fixtures()) {
    auto& t = tally["rouge1_recall"];
    ++t.first;
    t.second += metrics::rouge1_recall(f.reference, f.system) == f.expected;
  }
  for (const auto& f : ratio_fixtures()) {
    corpus::QuestionContent c;
    c.code_blocks = {"x"};
    c.code_length = f.code_length;
    c.prose_length = f.prose_length;
    auto& t = tally["text_code_ratio"];
    ++t.first;
    t.second += metrics::text_code_ratio(c) == f.expected;
  }
  for (const auto& f : metric_entropy_fixtures()) {
    auto& t = tally["metric_entropy"];
    ++t.first;
    t.second += metrics::metric_entropy(f.text) == f.expected;
  }
  auto table = topic_fixture_table();
  for (const auto& f : topic_entropy_fixtures()) {
    auto& t = tally["topic_entropy_raw"];
    ++t.first;
    t.second += metrics::topic_entropy_raw(f.tags, table) == f.expected && std::fabs(f.expected - f.approx) < 1e-9;
  }
  for (const auto& f : rix_fixtures()) {
    auto& t = tally["rix"];
    ++t.first;
    t.second += metrics::text_readability(f.text) == f.expected;
  }
  bool ok = tally.size() == 5;
  std::string detail;
  for (const auto& [name, t] : tally) {
    ok = ok && t.first >= 10 && t.second == t.first;
    detail += (detail.empty() ? "" : ", ") + name + " " + std::to_string(t.second) + "/" + std::to_string(t.first);
  }
  return {ok, detail};
}

// ------------------------------------------------------------ 4

Outcome classifier_sanity() {
  auto data = disjoint_dataset(1000, 4);
  if (nearest_centroid_accuracy(data) != 1.0) return {false, "synthetic classes are not separable"};
  auto noise = shuffled_labels(data, 5);
  bool ok = true;
  std::string detail;
  for (auto k : ml::kAllModels) {
    auto spec = ml::ModelSpec::with_defaults(k, 6);
    double sep = ml::cross_validate(spec, data, 10, 7).overall.accuracy;
    double shuf = ml::cross_validate(spec, noise, 10, 7).overall.accuracy;
    ok = ok && sep >= 0.95 && std::fabs(shuf - 0.5) <= 0.03;
    detail += (detail.empty() ? "" : ", ") + std::string(ml::model_name(k)) + " " + fmt(sep) + "/" + fmt(shuf);
  }
  return {ok, "separable/shuffled accuracy: " + detail};
}

// ------------------------------------------------------------ 5

Outcome gradient_criterion() {
  Rng rng(5);
  double worst = 0;
  for (int t = 0; t < 100; ++t) worst = std::max(worst, ::gradient_check(rng).relative_error);
  return {worst < 1e-4, "100 instances, worst relative error " + fmt(worst)};
}

// ------------------------------------------------------------ 6

Outcome bayes_equivalence() {
  auto r = run_bayes_suite(1e-9);
  return {r.max_posterior_error <= 1e-9 && r.decision_mismatches == 0 && r.sum_errors == 0,
          std::to_string(r.instances) + " instances, " + std::to_string(r.queries) + " queries, max posterior error " +
              fmt(r.max_posterior_error) + ", " + std::to_string(r.decision_mismatches) + " decision mismatches"};
}

// ------------------------------------------------------------ 7

Outcome parsability_ground_truth() {
  std::size_t agree = 0, total = 0;
  std::string misses;
  for (const auto& s : parsability_suite()) {
    ++total;
    bool parsed = codeparse::check_parsable({s.language, s.source, 1}) == codeparse::Parsability::Parsable;
    if (parsed == s.valid) {
      ++agree;
    } else {
      misses += " [" + std::string(corpus::language_name(s.language)) + ": " + s.note + "]";
    }
  }
  return {total == 40 && agree == total, std::to_string(agree) + "/" + std::to_string(total) + " agree" + misses};
}

// ------------------------------------------------------------ 8

std::map<std::string, std::string> csv_outputs(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file() && e.path().extension() == ".csv")
      files[fs::relative(e.path(), root).string()] = slurp(e.path().string());
  return files;
}

Outcome end_to_end_determinism() {
  TempDir dir("qqual-acceptance");
  std::ostringstream log;
  for (const char* run : {"first", "second"}) {
    app::RunConfig cfg;
    cfg.set("input", kFixture);
    cfg.set("seed", "2017");
    cfg.set("out", dir.file(run));
    app::cmd_ingest(cfg, log);
    app::cmd_metrics(cfg, log);
    app::cmd_compare(cfg, log);
    app::cmd_rank(cfg, log);
    app::cmd_train(cfg, log);
    app::cmd_report(cfg, log);
  }
  auto a = csv_outputs(dir.path() / "first"), b = csv_outputs(dir.path() / "second");
  std::size_t differing = 0;
  for (const auto& [name, content] : a)
    if (!b.count(name) || b.at(name) != content) ++differing;
  bool ok = !a.empty() && a.size() == b.size() && differing == 0 && a.count("table_v.csv") && a.count("comparison.csv");
  return {ok, std::to_string(a.size()) + " CSV files per run, " + std::to_string(differing) + " differ"};
}

// ------------------------------------------------------------ 9

// The fixture corpus with two systematic edits:
//  - discouraged questions carry their language tag plus two tags from a small pool
//    that everyone in that group shares, promoted ones two tags of their own;
//  - discouraged prose is cut down to a short text over the twelve most common
//    characters of the corpus, promoted prose is left as it is.
std::vector<corpus::Question> semi_synthetic_corpus() {
  auto loaded = corpus::load_corpus(kFixture, corpus::InputFormat::RecordLines, corpus::FilterSpec{});
  auto questions = loaded.questions;

  std::map<char32_t, std::size_t> freq;
  for (const auto& q : questions)
    for (char32_t c : text::decode_utf8(corpus::extract_content(q).prose)) ++freq[c];
  std::vector<std::pair<std::size_t, char32_t>> ranked;
  for (const auto& [c, n] : freq)
    if (c < 128 && (std::isalpha(static_cast<int>(c)) || c == ' ')) ranked.emplace_back(n, c);
  std::sort(ranked.rbegin(), ranked.rend());
  std::string common;
  for (std::size_t i = 0; i < 12 && i < ranked.size(); ++i) common += static_cast<char>(ranked[i].second);

  auto squeeze = [&](const std::string& s, std::size_t limit) {
    std::string out;
    for (char c : s)
      if (common.find(c) != std::string::npos && out.size() < limit) out += c;
    return text::collapse_whitespace(out).empty() ? std::string(common.substr(0, 3)) : out;
  };

  const std::vector<std::string> pool{"performance", "debugging", "arrays", "strings"};
  Rng rng(9);
  for (std::size_t i = 0; i < questions.size(); ++i) {
    auto& q = questions[i];
    std::string lang_tag = q.tags.front();
    for (const auto& t : q.tags)
      if (t == "c#" || t == "java" || t == "javascript" || t == "python") lang_tag = t;
    if (corpus::label(q) == corpus::QualityLabel::Discouraged) {
      auto a = uniform_index(rng, pool.size()), b = (a + 1 + uniform_index(rng, pool.size() - 1)) % pool.size();
      q.tags = {lang_tag, pool[a], pool[b]};
      auto content = corpus::extract_content(q);
      q.title = squeeze(q.title, 24);
      q.body = "<p>" + squeeze(content.body_prose, 48) + "</p>";
    } else {
      q.tags = {lang_tag, "niche-" + std::to_string(i), "detail-" + std::to_string(i)};
    }
  }
  return questions;
}

Outcome directional_property() {
  auto questions = semi_synthetic_corpus();
  auto tags = corpus::build_tag_table(questions);
  auto lexicon = metrics::SentimentLexicon::load(std::string(QQUAL_DATA_DIR) + "/sentiment_lexicon.tsv");
  auto weights = codeparse::ReadabilityWeights::defaults();
  metrics::MetricContext ctx{tags, lexicon, weights};
  auto batch = metrics::compute_batch(questions, ctx);
  bool ok = true;
  std::string detail;
  for (const char* m : {"te", "me"}) {
    auto r = stats::compare_groups(batch.vectors, m);
    bool higher = r.median_b > r.median_a && r.cliffs.d < 0;
    ok = ok && r.mwu.p < 0.05 && higher;
    detail += std::string(detail.empty() ? "" : "; ") + m + ": median promoted " + fmt(r.median_a) +
              ", discouraged " + fmt(r.median_b) + ", p " + fmt(r.mwu.p) + ", d " + fmt(r.cliffs.d);
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "information gain anchor", 1, information_gain_anchor},
      {2, "statistics oracle", 30, statistics_oracle},
      {3, "formula oracles", 1, formula_oracles},
      {4, "classifier sanity", 120, classifier_sanity},
      {5, "gradient check", 30, gradient_criterion},
      {6, "GaussianNB equivalence", 10, bayes_equivalence},
      {7, "parsability ground truth", 10, parsability_ground_truth},
      {8, "end-to-end determinism", 180, end_to_end_determinism},
      {9, "directional property check", 0, directional_property},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
    bool pass = o.ok && in_time;
    failed += !pass;
    std::string limit = c.limit_seconds > 0 ? " (limit " + fmt(c.limit_seconds) + " s)" : "";
    std::printf("%s criterion %d: %s [%.2f s%s] %s%s\n", pass ? "PASS" : "FAIL", c.number, c.name.c_str(), secs,
                limit.c_str(), o.detail.c_str(), in_time ? "" : " -- over the time limit");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
