#include <cmath>

#include "common.hpp"
#include "io_util.hpp"

namespace qqual::ml {

void RandomForest::fit(const Matrix& x, std::span<const QualityLabel> y) {
  detail::check_training_set(x, y);
  if (n_trees_ < 1) throw InvalidArgument("random forest needs at least one tree");
  const std::size_t n = x.size();
  const int max_features = std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(x.front().size())))));
  trees_.clear();
  trees_.reserve(static_cast<std::size_t>(n_trees_));
  for (int t = 0; t < n_trees_; ++t) {
    const std::uint64_t tree_seed = derive_seed(seed_, static_cast<std::uint64_t>(t));
    Rng rng(tree_seed);
    std::vector<std::size_t> sample(n);
    for (auto& s : sample) s = uniform_index(rng, n);
    DecisionTree tree(max_depth_, 2, max_features, derive_seed(tree_seed, 0));
    tree.fit_indices(x, y, std::move(sample));
    trees_.push_back(std::move(tree));
  }
}

std::vector<QualityLabel> RandomForest::tree_votes(std::span<const double> row) const {
  std::vector<QualityLabel> votes;
  votes.reserve(trees_.size());
  for (const auto& t : trees_) votes.push_back(t.predict(row));
  return votes;
}

Scores RandomForest::scores(std::span<const double> row) const {
  if (trees_.empty()) throw InvalidArgument("random forest is not trained");
  Scores s{0, 0};
  for (auto v : tree_votes(row)) s[class_index(v)] += 1;
  for (auto& v : s) v /= static_cast<double>(trees_.size());
  return s;
}

void RandomForest::save(std::ostream& out) const {
  out << "forest " << n_trees_ << ' ' << max_depth_ << ' ' << seed_ << ' ' << trees_.size() << '\n';
  for (const auto& t : trees_) t.save(out);
}

void RandomForest::load(std::istream& in) {
  detail::expect_key(in, "forest");
  n_trees_ = static_cast<int>(detail::read_int(in));
  max_depth_ = static_cast<int>(detail::read_int(in));
  seed_ = std::stoull(detail::read_token(in));
  std::size_t count = detail::read_count(in);
  if (count == 0) throw FormatError("model file: forest without trees");
  trees_.assign(count, DecisionTree{});
  for (auto& t : trees_) t.load(in);
}

}  // namespace qqual::ml
