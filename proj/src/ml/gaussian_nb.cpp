#include <cmath>
#include <numbers>

#include "common.hpp"
#include "io_util.hpp"

namespace qqual::ml {

void GaussianNB::fit(const Matrix& x, std::span<const QualityLabel> y) {
  detail::check_training_set(x, y);
  if (!(var_smoothing_ >= 0)) throw InvalidArgument("var_smoothing must be non-negative");
  const std::size_t n = x.size(), d = x.front().size();

  double max_var = 0;
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0;
    for (const auto& r : x) mean += r[j];
    mean /= static_cast<double>(n);
    double var = 0;
    for (const auto& r : x) var += (r[j] - mean) * (r[j] - mean);
    max_var = std::max(max_var, var / static_cast<double>(n));
  }
  epsilon_ = var_smoothing_ * (max_var > 0 ? max_var : 1.0);

  for (std::size_t c = 0; c < kClasses; ++c) {
    std::size_t count = 0;
    mean_[c].assign(d, 0.0);
    var_[c].assign(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (class_index(y[i]) != c) continue;
      ++count;
      for (std::size_t j = 0; j < d; ++j) mean_[c][j] += x[i][j];
    }
    for (auto& m : mean_[c]) m /= static_cast<double>(count);
    for (std::size_t i = 0; i < n; ++i) {
      if (class_index(y[i]) != c) continue;
      for (std::size_t j = 0; j < d; ++j) var_[c][j] += (x[i][j] - mean_[c][j]) * (x[i][j] - mean_[c][j]);
    }
    for (auto& v : var_[c]) v = v / static_cast<double>(count) + epsilon_;
    log_prior_[c] = std::log(static_cast<double>(count) / static_cast<double>(n));
  }
  if (epsilon_ == 0)
    for (const auto& vars : var_)
      for (double v : vars)
        if (v == 0) throw InvalidArgument("zero variance with var_smoothing 0");
}

Scores GaussianNB::scores(std::span<const double> row) const {
  if (mean_[0].empty() && var_[0].empty()) throw InvalidArgument("gaussian naive bayes is not trained");
  detail::check_dimension(row, mean_[0].size());
  std::array<double, kClasses> joint{};
  for (std::size_t c = 0; c < kClasses; ++c) {
    double ll = log_prior_[c];
    for (std::size_t j = 0; j < row.size(); ++j) {
      double diff = row[j] - mean_[c][j];
      ll -= 0.5 * std::log(2 * std::numbers::pi * var_[c][j]) + diff * diff / (2 * var_[c][j]);
    }
    joint[c] = ll;
  }
  double top = std::max(joint[0], joint[1]);
  double z = std::exp(joint[0] - top) + std::exp(joint[1] - top);
  return {std::exp(joint[0] - top) / z, std::exp(joint[1] - top) / z};
}

void GaussianNB::save(std::ostream& out) const {
  out << "gnb " << text::format_double(var_smoothing_) << ' ' << text::format_double(epsilon_) << '\n';
  for (std::size_t c = 0; c < kClasses; ++c) {
    out << "class " << c << ' ' << text::format_double(log_prior_[c]) << '\n';
    detail::write_values(out, "mean", mean_[c]);
    detail::write_values(out, "var", var_[c]);
  }
}

void GaussianNB::load(std::istream& in) {
  detail::expect_key(in, "gnb");
  var_smoothing_ = detail::read_double(in);
  epsilon_ = detail::read_double(in);
  for (std::size_t c = 0; c < kClasses; ++c) {
    detail::expect_key(in, "class");
    if (detail::read_count(in) != c) throw FormatError("model file: classes out of order");
    log_prior_[c] = detail::read_double(in);
    mean_[c] = detail::read_values(in, "mean");
    var_[c] = detail::read_values(in, "var");
    if (mean_[c].size() != var_[c].size() || mean_[c].size() != mean_[0].size())
      throw FormatError("model file: inconsistent naive bayes dimensions");
  }
}

}  // namespace qqual::ml
