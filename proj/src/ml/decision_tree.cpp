#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

#include "common.hpp"
#include "io_util.hpp"
#include "qqual/error.hpp"
#include "qqual/ml/classifiers.hpp"

namespace qqual::ml {

namespace {

struct Split {
  int feature = -1;
  double threshold = 0;
  double impurity = std::numeric_limits<double>::infinity();
};

// n * gini = n - sum c_k^2 / n
double weighted_gini(double c0, double c1) {
  double n = c0 + c1;
  return n == 0 ? 0 : n - (c0 * c0 + c1 * c1) / n;
}

}  // namespace

void DecisionTree::fit(const Matrix& x, std::span<const QualityLabel> y) {
  detail::check_training_set(x, y);
  std::vector<std::size_t> rows(x.size());
  std::iota(rows.begin(), rows.end(), 0);
  fit_indices(x, y, std::move(rows));
}

void DecisionTree::fit_indices(const Matrix& x, std::span<const QualityLabel> y, std::vector<std::size_t> rows) {
  if (rows.empty()) throw InvalidArgument("empty training sample");
  nodes_.clear();
  Rng rng(seed_);
  build(x, y, rows, 0, rows.size(), 0, rng);
}

int DecisionTree::build(const Matrix& x, std::span<const QualityLabel> y, std::vector<std::size_t>& rows,
                        std::size_t lo, std::size_t hi, int depth, Rng& rng) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  double counts[kClasses] = {0, 0};
  for (std::size_t i = lo; i < hi; ++i) counts[class_index(y[rows[i]])] += 1;
  const double n = static_cast<double>(hi - lo);
  nodes_[id].dist = {counts[0] / n, counts[1] / n};

  bool pure = counts[0] == 0 || counts[1] == 0;
  if (pure || (max_depth_ > 0 && depth >= max_depth_) || hi - lo < static_cast<std::size_t>(min_samples_split_))
    return id;

  const std::size_t d = x[rows[lo]].size();
  std::vector<std::size_t> features(d);
  std::iota(features.begin(), features.end(), 0);
  std::size_t tried = d;
  if (max_features_ > 0 && static_cast<std::size_t>(max_features_) < d) {
    shuffle(std::span(features), rng);
    tried = static_cast<std::size_t>(max_features_);
  }

  std::vector<std::pair<double, QualityLabel>> column(hi - lo);
  auto search = [&](std::span<const std::size_t> candidates) {
    std::vector<std::size_t> sorted(candidates.begin(), candidates.end());
    std::sort(sorted.begin(), sorted.end());
    Split best;
    for (std::size_t f : sorted) {
      for (std::size_t i = lo; i < hi; ++i) column[i - lo] = {x[rows[i]][f], y[rows[i]]};
      std::sort(column.begin(), column.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      double left[kClasses] = {0, 0};
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        left[class_index(column[i].second)] += 1;
        if (column[i].first == column[i + 1].first) continue;
        double imp = weighted_gini(left[0], left[1]) + weighted_gini(counts[0] - left[0], counts[1] - left[1]);
        if (imp < best.impurity) {
          best.impurity = imp;
          best.feature = static_cast<int>(f);
          best.threshold = column[i].first + (column[i + 1].first - column[i].first) / 2;
        }
      }
    }
    return best;
  };

  Split best = search(std::span(features).first(tried));
  if (best.feature < 0 && tried < d) best = search(std::span(features).subspan(tried));
  if (best.feature < 0) return id;  // every feature is constant on this node

  auto mid = std::partition(rows.begin() + static_cast<std::ptrdiff_t>(lo), rows.begin() + static_cast<std::ptrdiff_t>(hi),
                            [&](std::size_t r) { return x[r][best.feature] <= best.threshold; });
  std::size_t split = static_cast<std::size_t>(mid - rows.begin());
  nodes_[id].feature = best.feature;
  nodes_[id].threshold = best.threshold;
  int left = build(x, y, rows, lo, split, depth + 1, rng);
  int right = build(x, y, rows, split, hi, depth + 1, rng);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

Scores DecisionTree::scores(std::span<const double> row) const {
  if (nodes_.empty()) throw InvalidArgument("decision tree is not trained");
  int at = 0;
  while (nodes_[at].feature >= 0) {
    const Node& n = nodes_[at];
    if (static_cast<std::size_t>(n.feature) >= row.size()) throw InvalidArgument("row is shorter than the tree expects");
    at = row[n.feature] <= n.threshold ? n.left : n.right;
  }
  return nodes_[at].dist;
}

int DecisionTree::depth() const {
  std::function<int(int)> rec = [&](int i) -> int {
    if (nodes_[i].feature < 0) return 0;
    return 1 + std::max(rec(nodes_[i].left), rec(nodes_[i].right));
  };
  return nodes_.empty() ? 0 : rec(0);
}

void DecisionTree::save(std::ostream& out) const {
  out << "tree " << max_depth_ << ' ' << min_samples_split_ << ' ' << max_features_ << ' ' << seed_ << ' '
      << nodes_.size() << '\n';
  for (const auto& n : nodes_)
    out << n.feature << ' ' << text::format_double(n.threshold) << ' ' << n.left << ' ' << n.right << ' '
        << text::format_double(n.dist[0]) << ' ' << text::format_double(n.dist[1]) << '\n';
}

void DecisionTree::load(std::istream& in) {
  detail::expect_key(in, "tree");
  max_depth_ = static_cast<int>(detail::read_int(in));
  min_samples_split_ = static_cast<int>(detail::read_int(in));
  max_features_ = static_cast<int>(detail::read_int(in));
  seed_ = std::stoull(detail::read_token(in));
  std::size_t count = detail::read_count(in);
  nodes_.assign(count, Node{});
  for (auto& n : nodes_) {
    n.feature = static_cast<int>(detail::read_int(in));
    n.threshold = detail::read_double(in);
    n.left = static_cast<int>(detail::read_int(in));
    n.right = static_cast<int>(detail::read_int(in));
    n.dist[0] = detail::read_double(in);
    n.dist[1] = detail::read_double(in);
  }
  const int total = static_cast<int>(count);
  for (int i = 0; i < total; ++i) {
    const Node& n = nodes_[i];
    if (n.feature >= 0 && (n.left <= i || n.left >= total || n.right <= i || n.right >= total))
      throw FormatError("model file: tree node " + std::to_string(i) + " has invalid children");
  }
  if (nodes_.empty()) throw FormatError("model file: empty tree");
}

}  // namespace qqual::ml
