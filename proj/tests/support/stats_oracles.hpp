#pragma once

#include <cstdint>
#include <cstdlib>
#include <vector>

#include "qqual/random.hpp"

// Brute-force references for the rank statistics: plain pair counting and a full
// enumeration of every relabeling of the pooled sample.

// 2 * U_A by pair counting, ties count one half.
inline std::int64_t brute_twice_u(const std::vector<double>& a, const std::vector<double>& b) {
  std::int64_t w = 0;
  for (double x : a)
    for (double y : b) w += x > y ? 2 : (x == y ? 1 : 0);
  return w;
}

inline double brute_cliffs_d(const std::vector<double>& a, const std::vector<double>& b) {
  long long gt = 0, lt = 0;
  for (double x : a)
    for (double y : b) {
      gt += x > y;
      lt += x < y;
    }
  return static_cast<double>(gt - lt) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

// Two-sided permutation p: share of the C(n, n_A) relabelings whose |2U - n_A n_B|
// is at least the observed one.
inline double brute_exact_p(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size(), na = a.size();
  const auto center = static_cast<std::int64_t>(a.size() * b.size());
  const std::int64_t observed = std::llabs(brute_twice_u(a, b) - center);
  std::uint64_t extreme = 0, total = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != na) continue;
    std::vector<double> x, y;
    for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1u ? x : y).push_back(pooled[i]);
    ++total;
    if (std::llabs(brute_twice_u(x, y) - center) >= observed) ++extreme;
  }
  return static_cast<double>(extreme) / static_cast<double>(total);
}

// Small sample with frequent ties: values drawn from a handful of levels.
inline std::vector<double> tied_sample(qqual::Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  const std::uint64_t levels = 2 + qqual::uniform_index(rng, 8);
  for (auto& x : v) x = static_cast<double>(qqual::uniform_index(rng, levels)) * 0.5;
  return v;
}
