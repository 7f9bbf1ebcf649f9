#include <algorithm>

#include "qqual/csv.hpp"
#include "qqual/error.hpp"
#include "qqual/ml/harness.hpp"
#include "qqual/ml/info_gain.hpp"
#include "qqual/ml/ranking.hpp"
#include "qqual/text.hpp"

namespace qqual::ml {

namespace {

void sort_ranking(FeatureRanking& r) {
  std::sort(r.begin(), r.end(), [](const FeatureScore& a, const FeatureScore& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.feature < b.feature;
  });
}

}  // namespace

FeatureRanking rank_by_info_gain(const Dataset& data, std::size_t bins) {
  data.validate();
  if (data.cols() < 2) throw InvalidArgument("ranking needs at least 2 features");
  FeatureRanking r;
  for (std::size_t j = 0; j < data.cols(); ++j)
    r.push_back({data.feature_names[j], information_gain(data.column(j), data.y, bins)});
  sort_ranking(r);
  return r;
}

FeatureRanking rank_by_stump(const Dataset& data, std::size_t k, std::uint64_t seed, int max_depth) {
  data.validate();
  if (data.count(QualityLabel::Promoted) == 0 || data.count(QualityLabel::Discouraged) == 0)
    throw InvalidArgument("ranking needs both classes");
  FeatureRanking r;
  ModelSpec spec{ModelKind::DecisionTree, {{"max_depth", static_cast<double>(max_depth)}}, seed};
  for (std::size_t j = 0; j < data.cols(); ++j) {
    Dataset single;
    single.feature_names = {data.feature_names[j]};
    single.y = data.y;
    for (const auto& row : data.x) single.x.push_back({row[j]});
    r.push_back({data.feature_names[j], cross_validate(spec, single, k, seed).overall.accuracy});
  }
  sort_ranking(r);
  return r;
}

void write_ranking(const std::string& path, const FeatureRanking& ranking, const std::string& score_name) {
  csv::Table t;
  t.header = {"rank", "feature", score_name};
  for (std::size_t i = 0; i < ranking.size(); ++i)
    t.rows.push_back({std::to_string(i + 1), ranking[i].feature, text::format_double(ranking[i].score)});
  csv::write_file(path, t);
}

}  // namespace qqual::ml
