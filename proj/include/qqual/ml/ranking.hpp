#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qqual/ml/dataset.hpp"

namespace qqual::ml {

struct FeatureScore {
  std::string feature;
  double score = 0;
};

// Descending score, ties in lexicographic feature order.
using FeatureRanking = std::vector<FeatureScore>;

FeatureRanking rank_by_info_gain(const Dataset& data, std::size_t bins = 10);
// Cross-validated accuracy of a depth-limited tree trained on each feature alone.
FeatureRanking rank_by_stump(const Dataset& data, std::size_t k, std::uint64_t seed, int max_depth = 1);

void write_ranking(const std::string& path, const FeatureRanking& ranking, const std::string& score_name);

}  // namespace qqual::ml
