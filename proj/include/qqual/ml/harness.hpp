#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qqual/ml/evaluate.hpp"
#include "qqual/ml/model.hpp"

namespace qqual::ml {

inline constexpr std::size_t kDefaultFolds = 10;

// Stratified assignment: each class is shuffled with the seed and dealt round-robin,
// the second class continuing where the first stopped. Returns the fold of every row.
// Throws InvalidArgument when a class has fewer than k rows.
std::vector<std::size_t> stratified_folds(std::span<const QualityLabel> labels, std::size_t k, std::uint64_t seed);

struct EvalReport {
  std::string model;
  std::string feature_set;
  std::string variant;  // balanced / imbalanced
  std::string hyperparams;
  Evaluation overall;   // micro-averaged over pooled fold predictions
  std::vector<Evaluation> folds;
  std::vector<QualityLabel> predictions;  // out-of-fold prediction per row
};

// Folds are trained concurrently; fold f uses model seed derive_seed(spec.seed, f).
EvalReport cross_validate(const ModelSpec& spec, const Dataset& data, std::size_t k, std::uint64_t seed);
EvalReport cross_validate_serial(const ModelSpec& spec, const Dataset& data, std::size_t k, std::uint64_t seed);

// Parameter order is significant: the last parameter varies fastest in the Cartesian
// product, and accuracy ties go to the earliest combination.
using Grid = std::vector<std::pair<std::string, std::vector<double>>>;

Grid default_grid(ModelKind k);
std::vector<Hyperparams> expand_grid(ModelKind k, const Grid& grid);

struct GridPoint {
  Hyperparams hyperparams;
  double accuracy = 0;
};

struct GridResult {
  ModelSpec best;
  double best_accuracy = 0;
  std::vector<GridPoint> points;
};

GridResult grid_search(ModelKind kind, const Grid& grid, const Dataset& data, std::size_t k, std::uint64_t seed);

// model,feature_set,variant,hyperparams,promoted_precision,promoted_recall,promoted_f1,
// discouraged_precision,discouraged_recall,discouraged_f1,accuracy,averaging
const std::vector<std::string>& eval_header();
void write_eval_reports(const std::string& path, std::span<const EvalReport> reports);

}  // namespace qqual::ml
