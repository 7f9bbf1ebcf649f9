#include <fstream>

#include "qqual/csv.hpp"
#include "qqual/error.hpp"
#include "qqual/metrics.hpp"
#include "qqual/text.hpp"

namespace qqual::metrics {

namespace {

const csv::Row kHeader{"id", "language", "label", "has_code", "tq", "tr", "cr", "tcr", "tcc",
                       "cruse", "cua", "te", "te_raw", "me", "sp", "sp_pos", "sp_neg"};

std::string cell(const std::optional<double>& v) { return v ? text::format_double(*v) : ""; }

std::string_view parsability_name(codeparse::Parsability p) {
  return p == codeparse::Parsability::Parsable ? "parsable" : "unparsable";
}

}  // namespace

void write_metric_table(const std::string& path, std::span<const MetricVector> vectors) {
  csv::Table t;
  t.header = kHeader;
  for (const auto& v : vectors) {
    t.rows.push_back({std::to_string(v.id),
                      std::string(corpus::language_name(v.language)),
                      std::string(corpus::label_name(v.label)),
                      v.has_code ? "1" : "0",
                      cell(v.tq),
                      cell(v.tr),
                      cell(v.cr),
                      cell(v.tcr),
                      cell(v.tcc),
                      v.cruse ? std::string(parsability_name(*v.cruse)) : "",
                      v.cua ? std::to_string(*v.cua) : "",
                      cell(v.te),
                      cell(v.te_raw),
                      cell(v.me),
                      v.sp ? std::string(sentiment_name(*v.sp)) : "",
                      std::to_string(v.sp_positive),
                      std::to_string(v.sp_negative)});
  }
  csv::write_file(path, t);
}

std::vector<MetricVector> read_metric_table(const std::string& path) {
  auto t = csv::read_file(path);
  std::vector<std::size_t> col;
  for (const auto& h : kHeader) col.push_back(t.column(h));
  std::vector<MetricVector> out;
  for (const auto& r : t.rows) {
    auto f = [&](std::size_t k) -> const std::string& { return r[col[k]]; };
    MetricVector v;
    v.id = text::parse_int(f(0));
    v.language = corpus::parse_language(f(1));
    v.label = corpus::parse_label(f(2));
    v.has_code = f(3) == "1";
    v.tq = text::parse_optional_double(f(4));
    v.tr = text::parse_optional_double(f(5));
    v.cr = text::parse_optional_double(f(6));
    v.tcr = text::parse_optional_double(f(7));
    v.tcc = text::parse_optional_double(f(8));
    if (f(9) == "parsable") {
      v.cruse = codeparse::Parsability::Parsable;
    } else if (f(9) == "unparsable") {
      v.cruse = codeparse::Parsability::Unparsable;
    } else if (!f(9).empty()) {
      throw FormatError(path + ": bad cruse value '" + f(9) + "'");
    }
    if (!f(10).empty()) v.cua = text::parse_int(f(10));
    v.te = text::parse_optional_double(f(11));
    v.te_raw = text::parse_optional_double(f(12));
    v.me = text::parse_optional_double(f(13));
    if (!f(14).empty()) v.sp = parse_sentiment(f(14));
    v.sp_positive = static_cast<int>(text::parse_int(f(15)));
    v.sp_negative = static_cast<int>(text::parse_int(f(16)));
    out.push_back(std::move(v));
  }
  return out;
}

void write_diagnostics(const std::string& path, std::span<const Diagnostic> diagnostics) {
  csv::Table t;
  t.header = {"id", "field", "message"};
  for (const auto& d : diagnostics) t.rows.push_back({std::to_string(d.id), d.field, d.message});
  csv::write_file(path, t);
}

void write_metrics_meta(const std::string& path, const EntropyRange& range) {
  csv::Table t;
  t.header = {"key", "value"};
  t.rows.push_back({"te_min", text::format_double(range.min)});
  t.rows.push_back({"te_max", text::format_double(range.max)});
  csv::write_file(path, t);
}

EntropyRange read_metrics_meta(const std::string& path) {
  auto t = csv::read_file(path);
  auto k = t.column("key"), v = t.column("value");
  EntropyRange r;
  bool has_min = false, has_max = false;
  for (const auto& row : t.rows) {
    if (row[k] == "te_min") {
      r.min = text::parse_double(row[v]);
      has_min = true;
    } else if (row[k] == "te_max") {
      r.max = text::parse_double(row[v]);
      has_max = true;
    }
  }
  if (!has_min || !has_max) throw FormatError(path + ": missing te_min/te_max");
  return r;
}

}  // namespace qqual::metrics
