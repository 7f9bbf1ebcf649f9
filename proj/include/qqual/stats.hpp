#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qqual/metrics.hpp"

namespace qqual::stats {

inline constexpr std::size_t kExactLimit = 20;  // pooled size up to which p is exact
inline constexpr double kAlpha = 0.05;

struct MwuResult {
  double u_a = 0;  // U of the first sample, from midranks
  double u_b = 0;
  double z = 0;  // signed, continuity corrected; 0 when the variance vanishes
  double p = 1;  // two-sided
  bool exact = false;
};

// Exact permutation p when n_a + n_b <= kExactLimit, normal approximation with tie
// and continuity correction otherwise. Throws InvalidArgument on an empty sample.
MwuResult mann_whitney_u(std::span<const double> a, std::span<const double> b);
// Both p-value routes, available at any size (the exact one is limited to 62 values).
double mwu_exact_p(std::span<const double> a, std::span<const double> b);
double mwu_normal_p(std::span<const double> a, std::span<const double> b);

enum class Magnitude { Negligible, Small, Medium, Large };
std::string_view magnitude_name(Magnitude m);
// |d| < 0.147 negligible, < 0.33 small, < 0.474 medium, otherwise large.
Magnitude magnitude_of(double d);

struct CliffsResult {
  double d = 0;
  Magnitude magnitude = Magnitude::Negligible;
};

CliffsResult cliffs_delta(std::span<const double> a, std::span<const double> b);

// Quantile by the midpoint rule on sorted data: mean of the two order statistics
// around (n-1)q.
double quantile_midpoint(std::span<const double> sorted, double q);
double median(std::vector<double> values);

struct BandResult {
  bool comparable = false;  // both groups have members in the band
  double lower = 0;         // band is (lower, upper]; the first band includes its lower end
  double upper = 0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  MwuResult mwu;
  CliffsResult cliffs;
};

// Splits the pooled values at pooled Q1/Q2/Q3 and compares A and B inside each band.
// Throws InvalidArgument when fewer than 8 values are pooled.
std::array<BandResult, 4> quartile_compare(std::span<const double> a, std::span<const double> b);

struct ComparisonResult {
  std::string metric;
  std::size_t n_a = 0;  // promoted
  std::size_t n_b = 0;  // discouraged
  std::size_t dropped = 0;
  double median_a = 0;
  double median_b = 0;
  MwuResult mwu;
  CliffsResult cliffs;
  std::optional<std::array<BandResult, 4>> quartiles;  // absent below 8 pooled values

  bool significant() const { return mwu.p < kAlpha; }
};

ComparisonResult compare_samples(std::string metric, std::span<const double> a, std::span<const double> b,
                                 std::size_t dropped = 0);
// A = promoted rows, B = discouraged rows. N/A rows are dropped and counted. Throws
// InvalidArgument when a class keeps fewer than 2 rows.
ComparisonResult compare_groups(std::span<const metrics::MetricVector> rows, std::string_view metric);

// metric,scope,n_promoted,n_discouraged,n_dropped,median_promoted,median_discouraged,
// u,z,p,exact,significant,cliffs_d,magnitude,comparable
const std::vector<std::string>& comparison_header();
void write_comparison_csv(const std::string& path, std::span<const ComparisonResult> results);

struct BoxStats {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
  double whisker_low = 0, whisker_high = 0;  // furthest points within 1.5 IQR
  std::vector<double> outliers;
};
BoxStats box_stats(std::vector<double> values);

// Self-contained SVG with one box per non-empty series.
std::string boxplot_svg(std::string_view title, const std::vector<std::pair<std::string, std::vector<double>>>& series);

}  // namespace qqual::stats
