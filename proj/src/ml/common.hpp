#pragma once

#include <span>

#include "qqual/error.hpp"
#include "qqual/ml/classifiers.hpp"

namespace qqual::ml::detail {

// Non-empty, one label per row, rectangular, both classes present.
inline void check_training_set(const Matrix& x, std::span<const QualityLabel> y) {
  if (x.size() != y.size()) throw InvalidArgument("feature rows and labels differ in length");
  if (x.empty()) throw InvalidArgument("empty training set");
  for (const auto& row : x)
    if (row.size() != x.front().size()) throw InvalidArgument("training rows differ in length");
  bool a = false, b = false;
  for (auto l : y) (l == QualityLabel::Promoted ? a : b) = true;
  if (!(a && b)) throw InvalidArgument("training set holds a single class");
}

inline void check_dimension(std::span<const double> row, std::size_t expected) {
  if (row.size() != expected)
    throw InvalidArgument("row has " + std::to_string(row.size()) + " features, model expects " +
                          std::to_string(expected));
}

}  // namespace qqual::ml::detail
