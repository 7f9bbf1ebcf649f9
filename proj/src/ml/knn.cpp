#include <algorithm>

#include "common.hpp"
#include "io_util.hpp"

namespace qqual::ml {

void KNearest::fit(const Matrix& x, std::span<const QualityLabel> y) {
  detail::check_training_set(x, y);
  if (k_ < 1) throw InvalidArgument("k must be at least 1");
  x_ = x;
  y_.assign(y.begin(), y.end());
}

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    double d = a[j] - b[j];
    s += d * d;
  }
  return s;
}

}  // namespace

std::vector<double> KNearest::distances(std::span<const double> row) const {
  detail::check_dimension(row, x_.empty() ? 0 : x_.front().size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x_.size());
  std::vector<double> out(x_.size());
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = squared_distance(row, x_[i]);
  return out;
}

std::vector<double> KNearest::distances_serial(std::span<const double> row) const {
  detail::check_dimension(row, x_.empty() ? 0 : x_.front().size());
  std::vector<double> out(x_.size());
  for (std::size_t i = 0; i < x_.size(); ++i) out[i] = squared_distance(row, x_[i]);
  return out;
}

Scores KNearest::scores(std::span<const double> row) const {
  if (x_.empty()) throw InvalidArgument("knn is not trained");
  auto dist = distances(row);
  std::size_t k = std::min(static_cast<std::size_t>(k_), dist.size());
  std::vector<double> sorted = dist;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1), sorted.end());
  const double kth = sorted[k - 1];
  Scores s{0, 0};
  double total = 0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] <= kth) {
      s[class_index(y_[i])] += 1;
      total += 1;
    }
  }
  for (auto& v : s) v /= total;
  return s;
}

void KNearest::save(std::ostream& out) const {
  const std::size_t d = x_.empty() ? 0 : x_.front().size();
  out << "knn " << k_ << ' ' << x_.size() << ' ' << d << '\n';
  for (std::size_t i = 0; i < x_.size(); ++i) {
    out << (y_[i] == QualityLabel::Promoted ? 'P' : 'D');
    for (double v : x_[i]) out << ' ' << text::format_double(v);
    out << '\n';
  }
}

void KNearest::load(std::istream& in) {
  detail::expect_key(in, "knn");
  k_ = static_cast<int>(detail::read_int(in));
  std::size_t n = detail::read_count(in), d = detail::read_count(in);
  if (k_ < 1 || n == 0) throw FormatError("model file: invalid knn header");
  x_.assign(n, std::vector<double>(d));
  y_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string tag = detail::read_token(in);
    if (tag != "P" && tag != "D") throw FormatError("model file: bad knn label '" + tag + "'");
    y_[i] = tag == "P" ? QualityLabel::Promoted : QualityLabel::Discouraged;
    for (auto& v : x_[i]) v = detail::read_double(in);
  }
}

}  // namespace qqual::ml
