#include <algorithm>
#include <cmath>
#include <sstream>

#include "qqual/error.hpp"
#include "qqual/stats.hpp"
#include "qqual/text.hpp"

namespace qqual::stats {

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

BoxStats box_stats(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("box statistics of an empty sample");
  std::sort(values.begin(), values.end());
  BoxStats s;
  s.min = values.front();
  s.max = values.back();
  s.q1 = quantile_midpoint(values, 0.25);
  s.median = quantile_midpoint(values, 0.5);
  s.q3 = quantile_midpoint(values, 0.75);
  double iqr = s.q3 - s.q1;
  double lo = s.q1 - 1.5 * iqr, hi = s.q3 + 1.5 * iqr;
  s.whisker_low = s.q1;
  s.whisker_high = s.q3;
  for (double v : values) {
    if (v < lo || v > hi) {
      s.outliers.push_back(v);
      continue;
    }
    s.whisker_low = std::min(s.whisker_low, v);
    s.whisker_high = std::max(s.whisker_high, v);
  }
  return s;
}

std::string boxplot_svg(std::string_view title, const std::vector<std::pair<std::string, std::vector<double>>>& series) {
  const double width = 120.0 + 140.0 * static_cast<double>(std::max<std::size_t>(series.size(), 1));
  const double height = 360, top = 40, bottom = 310, left = 70;

  std::vector<std::optional<BoxStats>> stats;
  double lo = 0, hi = 1;
  bool first = true;
  for (const auto& [name, values] : series) {
    if (values.empty()) {
      stats.emplace_back();
      continue;
    }
    auto s = box_stats(values);
    if (first) {
      lo = s.min;
      hi = s.max;
      first = false;
    }
    lo = std::min(lo, s.min);
    hi = std::max(hi, s.max);
    stats.emplace_back(std::move(s));
  }
  if (hi <= lo) hi = lo + 1;
  auto y = [&](double v) { return bottom - (v - lo) / (hi - lo) * (bottom - top); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(width / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << xml_escape(title)
    << "</text>\n";
  o << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left) << "\" y2=\"" << num(bottom)
    << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    double v = lo + (hi - lo) * k / 4.0;
    o << "<text x=\"" << num(left - 6) << "\" y=\"" << num(y(v) + 4) << "\" text-anchor=\"end\">"
      << text::format_double(std::round(v * 1000) / 1000) << "</text>\n";
    o << "<line x1=\"" << num(left - 3) << "\" y1=\"" << num(y(v)) << "\" x2=\"" << num(left) << "\" y2=\""
      << num(y(v)) << "\" stroke=\"black\"/>\n";
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    double cx = left + 80 + 140.0 * static_cast<double>(i);
    o << "<text x=\"" << num(cx) << "\" y=\"" << num(bottom + 22) << "\" text-anchor=\"middle\">"
      << xml_escape(series[i].first) << " (n=" << series[i].second.size() << ")</text>\n";
    if (!stats[i]) continue;
    const BoxStats& s = *stats[i];
    o << "<line x1=\"" << num(cx) << "\" y1=\"" << num(y(s.whisker_low)) << "\" x2=\"" << num(cx) << "\" y2=\""
      << num(y(s.whisker_high)) << "\" stroke=\"black\"/>\n";
    o << "<rect x=\"" << num(cx - 35) << "\" y=\"" << num(y(s.q3)) << "\" width=\"70\" height=\""
      << num(std::max(y(s.q1) - y(s.q3), 0.5)) << "\" fill=\"#9ecae1\" stroke=\"black\"/>\n";
    o << "<line x1=\"" << num(cx - 35) << "\" y1=\"" << num(y(s.median)) << "\" x2=\"" << num(cx + 35)
      << "\" y2=\"" << num(y(s.median)) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    for (double w : {s.whisker_low, s.whisker_high})
      o << "<line x1=\"" << num(cx - 15) << "\" y1=\"" << num(y(w)) << "\" x2=\"" << num(cx + 15) << "\" y2=\""
        << num(y(w)) << "\" stroke=\"black\"/>\n";
    for (double v : s.outliers)
      o << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(y(v)) << "\" r=\"2\" fill=\"none\" stroke=\"#555\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace qqual::stats
