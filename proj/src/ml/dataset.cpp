#include <algorithm>
#include <cmath>

#include "qqual/error.hpp"
#include "qqual/ml/dataset.hpp"
#include "qqual/text.hpp"

namespace qqual::ml {

std::size_t Dataset::count(QualityLabel l) const { return static_cast<std::size_t>(std::count(y.begin(), y.end(), l)); }

void Dataset::validate() const {
  if (x.size() != y.size()) throw InvalidArgument("dataset has " + std::to_string(x.size()) + " rows but " +
                                                  std::to_string(y.size()) + " labels");
  if (!ids.empty() && ids.size() != x.size()) throw InvalidArgument("dataset id column has the wrong length");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != feature_names.size())
      throw InvalidArgument("row " + std::to_string(i) + " has " + std::to_string(x[i].size()) + " values, expected " +
                            std::to_string(feature_names.size()));
    for (std::size_t j = 0; j < x[i].size(); ++j)
      if (!std::isfinite(x[i][j]))
        throw InvalidArgument("non-finite value in row " + std::to_string(i) + ", feature " + feature_names[j]);
  }
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  Dataset out;
  out.feature_names = feature_names;
  out.x.reserve(rows.size());
  out.y.reserve(rows.size());
  for (auto r : rows) {
    out.x.push_back(x.at(r));
    out.y.push_back(y.at(r));
    if (!ids.empty()) out.ids.push_back(ids.at(r));
  }
  return out;
}

std::vector<double> Dataset::column(std::size_t j) const {
  std::vector<double> out;
  out.reserve(x.size());
  for (const auto& row : x) out.push_back(row.at(j));
  return out;
}

const std::vector<std::string>& all_features() {
  static const std::vector<std::string> v{"te", "me", "tcr", "cr", "tr", "tcc", "tq", "sp", "cua", "cruse"};
  return v;
}

const std::vector<std::string>& top4_features() {
  static const std::vector<std::string> v{"te", "tr", "me", "tcr"};
  return v;
}

std::vector<std::string> resolve_feature_set(std::string_view spec) {
  if (spec == "all") return all_features();
  if (spec == "top4") return top4_features();
  std::vector<std::string> out;
  for (auto& part : text::split(spec, ',')) {
    std::string name = text::to_lower_ascii(text::trim(part));
    if (name.empty()) continue;
    if (std::find(all_features().begin(), all_features().end(), name) == all_features().end())
      throw InvalidArgument("unknown feature '" + name + "' (expected all, top4 or a list of te, me, tcr, cr, tr, tcc, "
                            "tq, sp, cua, cruse)");
    if (std::find(out.begin(), out.end(), name) != out.end())
      throw InvalidArgument("feature '" + name + "' listed twice");
    out.push_back(name);
  }
  if (out.empty()) throw InvalidArgument("empty feature set");
  return out;
}

bool is_code_metric(std::string_view m) {
  return m == "tcr" || m == "tcc" || m == "cr" || m == "cruse" || m == "cua";
}

namespace {

const char* const kSentimentOneHot[] = {"sp_is_positive", "sp_is_negative", "sp_is_mixed", "sp_is_neutral"};

}  // namespace

std::vector<std::string> expand_columns(std::span<const std::string> metrics, NaPolicy policy) {
  std::vector<std::string> cols;
  bool code = false;
  for (const auto& m : metrics) {
    if (m == "sp") {
      cols.push_back("sp_pos");
      cols.push_back("sp_neg");
      for (auto c : kSentimentOneHot) cols.push_back(c);
    } else {
      cols.push_back(m);
    }
    code = code || is_code_metric(m);
  }
  if (code && policy == NaPolicy::ImputeZeroWithFlag) cols.push_back("has_code");
  return cols;
}

std::optional<std::vector<double>> feature_row(const metrics::MetricVector& v, std::span<const std::string> columns,
                                               NaPolicy policy) {
  std::vector<double> row;
  row.reserve(columns.size());
  for (const auto& c : columns) {
    std::optional<double> value;
    if (c == "has_code") {
      value = v.has_code ? 1.0 : 0.0;
    } else if (c == "sp_pos") {
      if (v.sp) value = v.sp_positive;
    } else if (c == "sp_neg") {
      if (v.sp) value = v.sp_negative;
    } else if (c.rfind("sp_is_", 0) == 0) {
      if (v.sp) value = metrics::sentiment_name(*v.sp) == std::string_view(c).substr(6) ? 1.0 : 0.0;
    } else {
      value = metrics::metric_value(v, c);
    }
    if (!value) {
      if (policy == NaPolicy::DropRows) return std::nullopt;
      value = 0.0;
    }
    row.push_back(*value);
  }
  return row;
}

Dataset build_dataset(std::span<const metrics::MetricVector> vectors, std::span<const std::string> metrics,
                      NaPolicy policy) {
  Dataset d;
  d.feature_names = expand_columns(metrics, policy);
  for (const auto& v : vectors) {
    auto row = feature_row(v, d.feature_names, policy);
    if (!row) continue;
    d.x.push_back(std::move(*row));
    d.y.push_back(v.label);
    d.ids.push_back(v.id);
  }
  d.validate();
  return d;
}

Dataset build_metric_columns(std::span<const metrics::MetricVector> vectors, std::span<const std::string> metrics) {
  Dataset d;
  d.feature_names.assign(metrics.begin(), metrics.end());
  for (const auto& v : vectors) {
    std::vector<double> row;
    for (const auto& m : metrics) row.push_back(metrics::metric_value(v, m).value_or(0.0));
    d.x.push_back(std::move(row));
    d.y.push_back(v.label);
    d.ids.push_back(v.id);
  }
  d.validate();
  return d;
}

Dataset undersample(const Dataset& d, std::uint64_t seed) {
  auto idx = corpus::undersample_indices(d.y, seed);
  return d.subset(idx);
}

}  // namespace qqual::ml
