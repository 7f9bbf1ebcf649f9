#include "qqual/ml/info_gain.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "qqual/error.hpp"

namespace qqual::ml {

namespace {

double entropy_of_counts(std::span<const std::size_t> counts) {
  std::size_t n = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  if (n == 0) return 0;
  double h = 0;
  for (auto c : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / static_cast<double>(n);
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

double class_entropy(std::span<const QualityLabel> labels) {
  std::size_t counts[kClasses] = {0, 0};
  for (auto l : labels) ++counts[class_index(l)];
  return entropy_of_counts(counts);
}

std::vector<std::size_t> equal_frequency_bins(std::span<const double> column, std::size_t bins) {
  if (bins == 0) throw InvalidArgument("bin count must be positive");
  const std::size_t n = column.size();
  std::vector<std::size_t> out(n);
  std::set<double> distinct(column.begin(), column.end());
  if (distinct.size() <= bins) {
    std::map<double, std::size_t> index;
    for (double v : distinct) index.emplace(v, index.size());
    for (std::size_t i = 0; i < n; ++i) out[i] = index[column[i]];
    return out;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return column[a] < column[b]; });
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && column[order[i]] == column[order[i - 1]])
      out[order[i]] = out[order[i - 1]];
    else
      out[order[i]] = i * bins / n;
  }
  return out;
}

double information_gain(std::span<const double> column, std::span<const QualityLabel> labels, std::size_t bins) {
  if (column.size() != labels.size()) throw InvalidArgument("information_gain: column and labels differ in length");
  if (column.size() < 2) throw InvalidArgument("information_gain: need at least 2 rows");
  const double h = class_entropy(labels);
  if (h == 0) return 0;
  auto binned = equal_frequency_bins(column, bins);
  std::size_t nb = *std::max_element(binned.begin(), binned.end()) + 1;
  std::vector<std::size_t> joint(nb * kClasses, 0);
  for (std::size_t i = 0; i < binned.size(); ++i) ++joint[binned[i] * kClasses + class_index(labels[i])];
  double conditional = 0;
  const double n = static_cast<double>(column.size());
  for (std::size_t b = 0; b < nb; ++b) {
    std::span<const std::size_t> cell(joint.data() + b * kClasses, kClasses);
    double nbin = static_cast<double>(cell[0] + cell[1]);
    conditional += nbin / n * entropy_of_counts(cell);
  }
  return std::clamp(h - conditional, 0.0, h);
}

}  // namespace qqual::ml
