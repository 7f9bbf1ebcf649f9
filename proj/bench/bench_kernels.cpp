// Wall-clock comparison of the OpenMP kernels against their serial references.
//   bench_kernels [--repeat N] [--rows N]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qqual/corpus.hpp"
#include "qqual/metrics.hpp"
#include "qqual/ml.hpp"
#include "qqual/random.hpp"

using namespace qqual;

namespace {

template <class F>
double best_of(int repeat, F&& f) {
  double best = 1e300;
  for (int i = 0; i < repeat; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s < best) best = s;
  }
  return best;
}

void report(const char* name, double parallel, double serial, bool same) {
  std::printf("%-18s parallel %9.4f s  serial %9.4f s  speedup %5.2fx  %s\n", name, parallel, serial,
              parallel > 0 ? serial / parallel : 0.0, same ? "identical" : "MISMATCH");
}

ml::Dataset random_dataset(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  ml::Dataset d;
  for (std::size_t c = 0; c < cols; ++c) d.feature_names.push_back("f" + std::to_string(c));
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<double> row(cols);
    double shift = i % 2 == 0 ? 0.0 : 0.3;
    for (auto& v : row) v = shift + uniform_unit(rng);
    d.x.push_back(std::move(row));
    d.y.push_back(i % 2 == 0 ? ml::QualityLabel::Promoted : ml::QualityLabel::Discouraged);
    d.ids.push_back(static_cast<std::int64_t>(i + 1));
  }
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel benchmark"};
  int repeat = 3;
  std::size_t rows = 20000;
  std::string fixture = std::string(QQUAL_DATA_DIR) + "/fixture/questions.jsonl";
  app.add_option("--repeat", repeat)->check(CLI::PositiveNumber);
  app.add_option("--rows", rows, "rows for the KNN distance kernel")->check(CLI::PositiveNumber);
  app.add_option("--fixture", fixture);
  CLI11_PARSE(app, argc, argv);

  std::printf("threads: %d\n", omp_get_max_threads());

  auto loaded = corpus::load_corpus(fixture, corpus::InputFormat::RecordLines, corpus::FilterSpec{});
  auto tags = corpus::build_tag_table(loaded.questions);
  auto lexicon = metrics::SentimentLexicon::load(std::string(QQUAL_DATA_DIR) + "/sentiment_lexicon.tsv");
  auto weights = codeparse::ReadabilityWeights::defaults();
  metrics::MetricContext ctx{tags, lexicon, weights};

  metrics::BatchResult par, ser;
  double tp = best_of(repeat, [&] { par = metrics::compute_batch(loaded.questions, ctx); });
  double ts = best_of(repeat, [&] { ser = metrics::compute_batch_serial(loaded.questions, ctx); });
  report("compute_batch", tp, ts, par.vectors == ser.vectors && par.diagnostics == ser.diagnostics);

  auto data = random_dataset(2000, 6, 11);
  for (ml::ModelKind k : {ml::ModelKind::RandomForest, ml::ModelKind::NeuralNet}) {
    auto spec = ml::ModelSpec::with_defaults(k, 3);
    ml::EvalReport rp, rs;
    tp = best_of(repeat, [&] { rp = ml::cross_validate(spec, data, 10, 5); });
    ts = best_of(repeat, [&] { rs = ml::cross_validate_serial(spec, data, 10, 5); });
    std::string name = "cv " + std::string(ml::model_name(k));
    report(name.c_str(), tp, ts, rp.predictions == rs.predictions);
  }

  auto big = random_dataset(rows, 8, 13);
  ml::KNearest knn(5);
  knn.fit(big.x, big.y);
  std::vector<double> dp, ds;
  const int queries = 200;
  tp = best_of(repeat, [&] {
    for (int q = 0; q < queries; ++q) dp = knn.distances(big.x[static_cast<std::size_t>(q)]);
  });
  ts = best_of(repeat, [&] {
    for (int q = 0; q < queries; ++q) ds = knn.distances_serial(big.x[static_cast<std::size_t>(q)]);
  });
  report("knn distances", tp, ts, dp == ds);
  return 0;
}
