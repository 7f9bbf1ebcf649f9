#include <algorithm>
#include <cmath>

#include "qqual/error.hpp"
#include "qqual/stats.hpp"

namespace qqual::stats {

double quantile_midpoint(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw InvalidArgument("quantile of an empty sample");
  double h = static_cast<double>(sorted.size() - 1) * q;
  auto lo = static_cast<std::size_t>(std::floor(h));
  auto hi = static_cast<std::size_t>(std::ceil(h));
  return (sorted[lo] + sorted[hi]) / 2.0;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return quantile_midpoint(values, 0.5);
}

std::array<BandResult, 4> quartile_compare(std::span<const double> a, std::span<const double> b) {
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  if (pooled.size() < 8) throw InvalidArgument("quartile comparison needs at least 8 pooled values");
  std::sort(pooled.begin(), pooled.end());
  const double cuts[5] = {pooled.front(), quantile_midpoint(pooled, 0.25), quantile_midpoint(pooled, 0.5),
                          quantile_midpoint(pooled, 0.75), pooled.back()};
  auto band_of = [&](double x) {
    if (x <= cuts[1]) return 0;
    if (x <= cuts[2]) return 1;
    if (x <= cuts[3]) return 2;
    return 3;
  };
  std::array<std::vector<double>, 4> ba, bb;
  for (double x : a) ba[static_cast<std::size_t>(band_of(x))].push_back(x);
  for (double x : b) bb[static_cast<std::size_t>(band_of(x))].push_back(x);
  std::array<BandResult, 4> out;
  for (std::size_t k = 0; k < 4; ++k) {
    BandResult& r = out[k];
    r.lower = cuts[k];
    r.upper = cuts[k + 1];
    r.n_a = ba[k].size();
    r.n_b = bb[k].size();
    r.comparable = r.n_a > 0 && r.n_b > 0;
    if (r.comparable) {
      r.mwu = mann_whitney_u(ba[k], bb[k]);
      r.cliffs = cliffs_delta(ba[k], bb[k]);
    }
  }
  return out;
}

}  // namespace qqual::stats
