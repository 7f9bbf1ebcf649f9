#pragma once

#include <span>
#include <string>
#include <vector>

#include "qqual/ml/dataset.hpp"

namespace qqual::ml {

struct ClassMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::size_t support = 0;    // true members
  std::size_t predicted = 0;  // predicted members
};

struct Evaluation {
  ClassMetrics promoted;
  ClassMetrics discouraged;
  double accuracy = 0;
  std::size_t n = 0;
  std::vector<std::string> warnings;

  const ClassMetrics& of(QualityLabel l) const { return l == QualityLabel::Promoted ? promoted : discouraged; }
};

// A class never predicted gets precision 0 and a warning. Throws InvalidArgument on a
// length mismatch or empty input.
Evaluation evaluate(std::span<const QualityLabel> predicted, std::span<const QualityLabel> truth);

}  // namespace qqual::ml
