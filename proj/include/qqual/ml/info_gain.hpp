#pragma once

#include <span>
#include <vector>

#include "qqual/ml/dataset.hpp"

namespace qqual::ml {

inline constexpr std::size_t kDefaultBins = 10;

// Class entropy in nats.
double class_entropy(std::span<const QualityLabel> labels);

// Equal-frequency bin of every value. With at most `bins` distinct values each value
// is its own bin; otherwise position i of the sorted order goes to floor(i*bins/n),
// and equal values share the bin of their first occurrence.
std::vector<std::size_t> equal_frequency_bins(std::span<const double> column, std::size_t bins);

// H(C) - H(C | binned feature), in nats.
double information_gain(std::span<const double> column, std::span<const QualityLabel> labels,
                        std::size_t bins = kDefaultBins);

}  // namespace qqual::ml
