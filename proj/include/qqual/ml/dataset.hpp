#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qqual/corpus.hpp"
#include "qqual/metrics.hpp"

namespace qqual::ml {

using corpus::QualityLabel;

inline constexpr std::size_t kClasses = 2;
inline std::size_t class_index(QualityLabel l) { return l == QualityLabel::Promoted ? 0 : 1; }
inline QualityLabel class_label(std::size_t i) { return i == 0 ? QualityLabel::Promoted : QualityLabel::Discouraged; }

enum class NaPolicy { ImputeZeroWithFlag, DropRows };

struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> x;
  std::vector<QualityLabel> y;
  std::vector<std::int64_t> ids;

  std::size_t rows() const { return x.size(); }
  std::size_t cols() const { return feature_names.size(); }
  std::size_t count(QualityLabel l) const;
  // Throws InvalidArgument unless rectangular and finite.
  void validate() const;
  Dataset subset(std::span<const std::size_t> rows) const;
  std::vector<double> column(std::size_t j) const;
};

// Metric names: all = te, me, tcr, cr, tr, tcc, tq, sp, cua, cruse; top4 = te, tr, me, tcr.
const std::vector<std::string>& all_features();
const std::vector<std::string>& top4_features();
// "all", "top4" or a comma-separated metric list.
std::vector<std::string> resolve_feature_set(std::string_view spec);

bool is_code_metric(std::string_view metric);

// Model columns for a metric list: sp expands to its two strengths plus a one-hot of
// the four categories; with ImputeZeroWithFlag, code metrics add one has_code column.
std::vector<std::string> expand_columns(std::span<const std::string> metrics, NaPolicy policy);

// Values of `columns` for one vector; N/A becomes 0 under ImputeZeroWithFlag and an
// empty result under DropRows.
std::optional<std::vector<double>> feature_row(const metrics::MetricVector& v, std::span<const std::string> columns,
                                               NaPolicy policy);

Dataset build_dataset(std::span<const metrics::MetricVector> vectors, std::span<const std::string> metrics,
                      NaPolicy policy);

// One column per metric holding metric_value with N/A imputed as 0 (ranking tables).
Dataset build_metric_columns(std::span<const metrics::MetricVector> vectors, std::span<const std::string> metrics);

// Balanced variant via undersampling.
Dataset undersample(const Dataset& d, std::uint64_t seed);

}  // namespace qqual::ml
