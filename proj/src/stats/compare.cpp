#include <fstream>

#include "qqual/csv.hpp"
#include "qqual/error.hpp"
#include "qqual/stats.hpp"
#include "qqual/text.hpp"

namespace qqual::stats {

ComparisonResult compare_samples(std::string metric, std::span<const double> a, std::span<const double> b,
                                 std::size_t dropped) {
  if (a.size() < 2 || b.size() < 2)
    throw InvalidArgument("metric '" + metric + "' needs at least 2 applicable rows per class (have " +
                          std::to_string(a.size()) + " and " + std::to_string(b.size()) + ")");
  ComparisonResult r;
  r.metric = std::move(metric);
  r.n_a = a.size();
  r.n_b = b.size();
  r.dropped = dropped;
  r.median_a = median({a.begin(), a.end()});
  r.median_b = median({b.begin(), b.end()});
  r.mwu = mann_whitney_u(a, b);
  r.cliffs = cliffs_delta(a, b);
  if (a.size() + b.size() >= 8) r.quartiles = quartile_compare(a, b);
  return r;
}

ComparisonResult compare_groups(std::span<const metrics::MetricVector> rows, std::string_view metric) {
  std::vector<double> a, b;
  std::size_t dropped = 0;
  for (const auto& v : rows) {
    auto x = metrics::metric_value(v, metric);
    if (!x) {
      ++dropped;
      continue;
    }
    (v.label == corpus::QualityLabel::Promoted ? a : b).push_back(*x);
  }
  return compare_samples(std::string(metric), a, b, dropped);
}

const std::vector<std::string>& comparison_header() {
  static const std::vector<std::string> h{"metric", "scope",    "n_promoted", "n_discouraged", "n_dropped",
                                          "median_promoted", "median_discouraged", "u", "z", "p",
                                          "exact", "significant", "cliffs_d", "magnitude", "comparable"};
  return h;
}

void write_comparison_csv(const std::string& path, std::span<const ComparisonResult> results) {
  using text::format_double;
  csv::Table t;
  t.header = comparison_header();
  for (const auto& r : results) {
    t.rows.push_back({r.metric, "overall", std::to_string(r.n_a), std::to_string(r.n_b), std::to_string(r.dropped),
                      format_double(r.median_a), format_double(r.median_b), format_double(r.mwu.u_a),
                      format_double(r.mwu.z), format_double(r.mwu.p), r.mwu.exact ? "1" : "0",
                      r.significant() ? "1" : "0", format_double(r.cliffs.d),
                      std::string(magnitude_name(r.cliffs.magnitude)), "1"});
    if (!r.quartiles) continue;
    for (std::size_t k = 0; k < 4; ++k) {
      const auto& q = (*r.quartiles)[k];
      std::string scope = "Q" + std::to_string(k + 1);
      if (!q.comparable) {
        t.rows.push_back({r.metric, scope, std::to_string(q.n_a), std::to_string(q.n_b), "", "", "", "", "", "", "",
                          "", "", "", "0"});
        continue;
      }
      t.rows.push_back({r.metric, scope, std::to_string(q.n_a), std::to_string(q.n_b), "", "", "",
                        format_double(q.mwu.u_a), format_double(q.mwu.z), format_double(q.mwu.p),
                        q.mwu.exact ? "1" : "0", q.mwu.p < kAlpha ? "1" : "0", format_double(q.cliffs.d),
                        std::string(magnitude_name(q.cliffs.magnitude)), "1"});
    }
  }
  csv::write_file(path, t);
}

}  // namespace qqual::stats
