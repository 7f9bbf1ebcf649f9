#include <algorithm>
#include <cmath>

#include "qqual/error.hpp"
#include "qqual/stats.hpp"

namespace qqual::stats {

std::string_view magnitude_name(Magnitude m) {
  switch (m) {
    case Magnitude::Negligible:
      return "negligible";
    case Magnitude::Small:
      return "small";
    case Magnitude::Medium:
      return "medium";
    case Magnitude::Large:
      return "large";
  }
  return "negligible";
}

Magnitude magnitude_of(double d) {
  double m = std::fabs(d);
  if (m < 0.147) return Magnitude::Negligible;
  if (m < 0.33) return Magnitude::Small;
  if (m < 0.474) return Magnitude::Medium;
  return Magnitude::Large;
}

CliffsResult cliffs_delta(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("Cliff's delta needs two non-empty samples");
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sb.begin(), sb.end());
  long long dominance = 0;
  for (double x : a) {
    auto lo = std::lower_bound(sb.begin(), sb.end(), x);
    auto hi = std::upper_bound(sb.begin(), sb.end(), x);
    dominance += (lo - sb.begin()) - (sb.end() - hi);
  }
  CliffsResult r;
  r.d = static_cast<double>(dominance) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
  r.magnitude = magnitude_of(r.d);
  return r;
}

}  // namespace qqual::stats
