#include <cmath>

#include "qqual/error.hpp"
#include "qqual/ml/classifiers.hpp"

namespace qqual::ml {

QualityLabel argmax_label(const Scores& s) { return s[1] > s[0] ? QualityLabel::Discouraged : QualityLabel::Promoted; }

Standardizer Standardizer::fit(const Matrix& x) {
  if (x.empty()) throw InvalidArgument("cannot standardize an empty matrix");
  const std::size_t d = x.front().size();
  Standardizer s;
  s.mean.assign(d, 0.0);
  s.scale.assign(d, 0.0);
  for (const auto& row : x)
    for (std::size_t j = 0; j < d; ++j) s.mean[j] += row[j];
  for (auto& m : s.mean) m /= static_cast<double>(x.size());
  for (const auto& row : x)
    for (std::size_t j = 0; j < d; ++j) s.scale[j] += (row[j] - s.mean[j]) * (row[j] - s.mean[j]);
  for (auto& v : s.scale) {
    v = std::sqrt(v / static_cast<double>(x.size()));
    if (!(v > 0)) v = 1.0;
  }
  return s;
}

std::vector<double> Standardizer::apply(std::span<const double> row) const {
  if (row.size() != mean.size())
    throw InvalidArgument("row has " + std::to_string(row.size()) + " features, standardizer expects " +
                          std::to_string(mean.size()));
  std::vector<double> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) out[j] = (row[j] - mean[j]) / scale[j];
  return out;
}

Matrix Standardizer::apply(const Matrix& x) const {
  Matrix out;
  out.reserve(x.size());
  for (const auto& r : x) out.push_back(apply(r));
  return out;
}

}  // namespace qqual::ml
