#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "qqual/error.hpp"
#include "qqual/stats.hpp"

namespace qqual::stats {

namespace {

struct Ranked {
  std::vector<std::int64_t> doubled_ranks;  // 2 * midrank, pooled order: a then b
  double tie_term = 0;                      // sum of t^3 - t over tie groups
};

Ranked rank_pooled(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() + b.size();
  std::vector<double> v(a.begin(), a.end());
  v.insert(v.end(), b.begin(), b.end());
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto i, auto j) { return v[i] < v[j]; });
  Ranked r;
  r.doubled_ranks.assign(n, 0);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && v[idx[j]] == v[idx[i]]) ++j;
    // ranks i+1..j share the midrank (i+1+j)/2
    auto doubled = static_cast<std::int64_t>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) r.doubled_ranks[idx[k]] = doubled;
    double t = static_cast<double>(j - i);
    r.tie_term += t * t * t - t;
    i = j;
  }
  return r;
}

void check(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("rank test needs two non-empty samples");
  for (double x : a)
    if (std::isnan(x)) throw InvalidArgument("NaN in sample");
  for (double x : b)
    if (std::isnan(x)) throw InvalidArgument("NaN in sample");
}

// 2U_a from the doubled rank sum of a.
std::int64_t twice_u(std::int64_t doubled_rank_sum, std::int64_t na) { return doubled_rank_sum - na * (na + 1); }

}  // namespace

double mwu_exact_p(std::span<const double> a, std::span<const double> b) {
  check(a, b);
  const std::size_t n = a.size() + b.size();
  if (n > 62) throw InvalidArgument("exact Mann-Whitney p is limited to 62 pooled values");
  const auto na = static_cast<std::int64_t>(a.size());
  const auto nb = static_cast<std::int64_t>(b.size());
  Ranked r = rank_pooled(a, b);
  std::int64_t observed_sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) observed_sum += r.doubled_ranks[i];
  const std::int64_t center = na * nb;
  const std::int64_t observed_dev = std::llabs(twice_u(observed_sum, na) - center);

  // ways[k][s]: subsets of size k of the items seen so far with doubled rank sum s
  std::int64_t max_sum = 0;
  for (auto d : r.doubled_ranks) max_sum += d;
  std::vector<std::vector<std::uint64_t>> ways(a.size() + 1,
                                               std::vector<std::uint64_t>(static_cast<std::size_t>(max_sum) + 1, 0));
  ways[0][0] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    auto d = static_cast<std::size_t>(r.doubled_ranks[i]);
    for (std::size_t k = std::min(i + 1, a.size()); k >= 1; --k)
      for (std::size_t s = static_cast<std::size_t>(max_sum); s >= d; --s) ways[k][s] += ways[k - 1][s - d];
  }
  std::uint64_t extreme = 0, total = 0;
  for (std::size_t s = 0; s <= static_cast<std::size_t>(max_sum); ++s) {
    std::uint64_t w = ways[a.size()][s];
    if (w == 0) continue;
    total += w;
    if (std::llabs(twice_u(static_cast<std::int64_t>(s), na) - center) >= observed_dev) extreme += w;
  }
  return static_cast<double>(extreme) / static_cast<double>(total);
}

double mwu_normal_p(std::span<const double> a, std::span<const double> b) {
  check(a, b);
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double n = na + nb;
  Ranked r = rank_pooled(a, b);
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += r.doubled_ranks[i];
  const double u = static_cast<double>(twice_u(sum, static_cast<std::int64_t>(a.size()))) / 2.0;
  const double var = na * nb / 12.0 * ((n + 1) - r.tie_term / (n * (n - 1)));
  if (!(var > 0)) return 1.0;
  const double dev = std::max(std::fabs(u - na * nb / 2.0) - 0.5, 0.0);
  return std::min(1.0, std::erfc(dev / std::sqrt(var) / std::sqrt(2.0)));
}

MwuResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  check(a, b);
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double n = na + nb;
  Ranked r = rank_pooled(a, b);
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += r.doubled_ranks[i];
  MwuResult res;
  res.u_a = static_cast<double>(twice_u(sum, static_cast<std::int64_t>(a.size()))) / 2.0;
  res.u_b = na * nb - res.u_a;
  const double var = n > 1 ? na * nb / 12.0 * ((n + 1) - r.tie_term / (n * (n - 1))) : 0.0;
  if (var > 0) {
    double diff = res.u_a - na * nb / 2.0;
    double dev = std::max(std::fabs(diff) - 0.5, 0.0);
    res.z = (diff < 0 ? -dev : dev) / std::sqrt(var);
  }
  if (a.size() + b.size() <= kExactLimit) {
    res.exact = true;
    res.p = mwu_exact_p(a, b);
  } else {
    res.p = mwu_normal_p(a, b);
  }
  return res;
}

}  // namespace qqual::stats
