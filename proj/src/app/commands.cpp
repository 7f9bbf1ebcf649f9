#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "qqual/app.hpp"
#include "qqual/csv.hpp"
#include "qqual/error.hpp"
#include "qqual/metrics.hpp"
#include "qqual/ml.hpp"
#include "qqual/random.hpp"
#include "qqual/stats.hpp"
#include "qqual/text.hpp"

namespace fs = std::filesystem;

namespace qqual::app {

namespace {

void require_file(const std::string& path, std::string_view what) {
  if (!fs::is_regular_file(path)) throw IoError(std::string(what) + " not found: " + path);
}

void ensure_out(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) throw IoError("cannot create output directory " + cfg.out + ": " + ec.message());
}

std::vector<metrics::MetricVector> load_metrics(const RunConfig& cfg) {
  auto path = cfg.out_path("metrics.csv");
  require_file(path, "metrics table (run the metrics command first)");
  auto rows = metrics::read_metric_table(path);
  if (rows.empty()) throw EmptyCorpusError("metrics table " + path + " has no rows");
  return rows;
}

codeparse::BackendRegistry parser_registry(const RunConfig& cfg) {
  std::map<std::string, std::string> assignment;
  for (auto lang : corpus::kStudiedLanguages) {
    std::string name(corpus::language_name(lang));
    assignment[name] = name + "-rd";
  }
  for (const auto& [lang, backend] : cfg.parsers)
    assignment[std::string(corpus::language_name(corpus::parse_language(lang)))] = backend;
  return codeparse::BackendRegistry::from_config(assignment);
}

corpus::TagFrequencyTable load_tags(const RunConfig& cfg) {
  auto path = cfg.tags.empty() ? cfg.out_path("tags.tsv") : cfg.tags;
  require_file(path, "tag table");
  return corpus::TagFrequencyTable::load(path);
}

std::string variant_name(bool balanced) { return balanced ? "balanced" : "imbalanced"; }

std::string feature_set_name(std::string_view spec) {
  if (spec == "all" || spec == "top4") return std::string(spec);
  auto list = ml::resolve_feature_set(spec);
  std::string out;
  for (const auto& f : list) out += (out.empty() ? "" : "+") + f;
  return out;
}

std::string percent(std::size_t part, std::size_t whole) {
  return whole == 0 ? "0" : text::format_double(100.0 * static_cast<double>(part) / static_cast<double>(whole));
}

// A model trained with has_code imputes N/A code metrics; one without it cannot.
ml::NaPolicy policy_of(const std::vector<std::string>& columns) {
  for (const auto& c : columns)
    if (c == "has_code") return ml::NaPolicy::ImputeZeroWithFlag;
  return ml::NaPolicy::DropRows;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

ml::Dataset training_set(const RunConfig& cfg, std::span<const metrics::MetricVector> rows, std::string_view features,
                         bool balanced) {
  auto d = ml::build_dataset(rows, ml::resolve_feature_set(features), cfg.na_policy);
  if (d.count(corpus::QualityLabel::Promoted) == 0 || d.count(corpus::QualityLabel::Discouraged) == 0)
    throw InvalidArgument("training data holds a single class");
  return balanced ? ml::undersample(d, cfg.seed) : d;
}

ml::ModelSpec choose_spec(const RunConfig& cfg, ml::ModelKind kind, const ml::Dataset& d, bool search,
                          ml::GridResult* grid_out) {
  // hyperparams and grid describe the configured model only
  const bool own_settings = kind == ml::parse_model(cfg.model);
  if (!search) {
    ml::ModelSpec spec = ml::ModelSpec::with_defaults(kind, cfg.seed);
    if (own_settings)
      for (const auto& [k, v] : ml::parse_hyperparams(cfg.hyperparams)) spec.hyperparams[k] = v;
    ml::check_hyperparams(kind, spec.hyperparams);
    return spec;
  }
  auto grid = own_settings ? parse_grid(cfg.grid, kind) : ml::default_grid(kind);
  auto result = ml::grid_search(kind, grid, d, cfg.folds, cfg.seed);
  ml::ModelSpec best = result.best;
  for (const auto& [k, v] : ml::default_hyperparams(kind)) best.hyperparams.emplace(k, v);
  if (grid_out) *grid_out = std::move(result);
  return best;
}

}  // namespace

void cmd_ingest(const RunConfig& cfg, std::ostream& log) {
  if (cfg.input.empty()) throw InvalidArgument("ingest needs an input file (input=... or --input)");
  require_file(cfg.input, "input corpus");
  auto loaded = corpus::load_corpus(cfg.input, cfg.format, cfg.filters);
  for (const auto& w : loaded.warnings) log << "warning: " << w << '\n';
  ensure_out(cfg);
  corpus::write_corpus_csv(cfg.out_path("corpus.csv"), loaded.questions);

  corpus::TagFrequencyTable tags =
      cfg.tags.empty() ? corpus::build_tag_table(loaded.questions) : corpus::TagFrequencyTable::load(cfg.tags);
  tags.save(cfg.out_path("tags.tsv"));

  csv::Table summary;
  summary.header = {"language", "promoted", "discouraged", "total"};
  std::size_t all_p = 0, all_d = 0;
  for (auto lang : corpus::kStudiedLanguages) {
    if (!cfg.filters.languages.count(lang)) continue;
    std::size_t p = 0, d = 0;
    for (const auto& q : loaded.questions) {
      if (q.language != lang) continue;
      (corpus::label(q) == corpus::QualityLabel::Promoted ? p : d) += 1;
    }
    all_p += p;
    all_d += d;
    summary.rows.push_back({std::string(corpus::language_name(lang)), std::to_string(p), std::to_string(d),
                            std::to_string(p + d)});
  }
  summary.rows.push_back({"total", std::to_string(all_p), std::to_string(all_d), std::to_string(all_p + all_d)});
  csv::write_file(cfg.out_path("summary.csv"), summary);

  log << "ingest: " << loaded.rows_read << " rows read, " << loaded.malformed_rows << " malformed, "
      << loaded.filtered_out << " filtered out, " << loaded.questions.size() << " kept\n";
}

void cmd_metrics(const RunConfig& cfg, std::ostream& log) {
  auto corpus_path = cfg.out_path("corpus.csv");
  require_file(corpus_path, "labeled corpus (run the ingest command first)");
  auto questions = corpus::read_corpus_csv(corpus_path);
  auto tags = load_tags(cfg);
  require_file(cfg.lexicon_path(), "sentiment lexicon");
  auto lexicon = metrics::SentimentLexicon::load(cfg.lexicon_path());
  require_file(cfg.weights_path(), "readability weights");
  auto weights = codeparse::ReadabilityWeights::load(cfg.weights_path());
  auto parsers = parser_registry(cfg);

  metrics::MetricContext ctx{tags, lexicon, weights, parsers};
  auto batch = metrics::compute_batch(questions, ctx);
  ensure_out(cfg);
  metrics::write_metric_table(cfg.out_path("metrics.csv"), batch.vectors);
  metrics::write_diagnostics(cfg.out_path("metric_diagnostics.csv"), batch.diagnostics);
  metrics::write_metrics_meta(cfg.out_path("metrics_meta.csv"), batch.te_range);
  log << "metrics: " << batch.vectors.size() << " questions, " << batch.diagnostics.size() << " diagnostics\n";
}

void cmd_compare(const RunConfig& cfg, std::ostream& log) {
  auto rows = load_metrics(cfg);
  ensure_out(cfg);
  fs::create_directories(cfg.out_path("plots"));

  std::vector<stats::ComparisonResult> results;
  const auto& names = metrics::metric_names();
  for (std::size_t m = 0; m < names.size(); ++m) {
    const auto& name = names[m];
    try {
      results.push_back(stats::compare_groups(rows, name));
    } catch (const InvalidArgument& e) {
      log << "warning: " << name << " not compared: " << e.what() << '\n';
      continue;
    }
    std::vector<double> promoted, discouraged;
    for (const auto& v : rows) {
      auto value = metrics::metric_value(v, name);
      if (!value) continue;
      (v.label == corpus::QualityLabel::Promoted ? promoted : discouraged).push_back(*value);
    }
    std::vector<double> sample = promoted;
    Rng rng(derive_seed(cfg.seed, m));
    shuffle(std::span(sample), rng);
    sample.resize(std::min(sample.size(), discouraged.size()));
    std::ofstream svg(cfg.out_path("plots/" + name + ".svg"), std::ios::binary);
    svg << stats::boxplot_svg(name, {{"TPS", promoted}, {"RPS", sample}, {"DS", discouraged}});
    if (!svg) throw IoError("cannot write plot for " + name);
  }
  stats::write_comparison_csv(cfg.out_path("comparison.csv"), results);

  // Text-code ratio categories per language and class.
  csv::Table tcr;
  tcr.header = {"language", "label", "category", "count", "percent"};
  for (auto lang : corpus::kStudiedLanguages)
    for (auto label : {corpus::QualityLabel::Promoted, corpus::QualityLabel::Discouraged}) {
      std::size_t counts[2] = {0, 0};
      for (const auto& v : rows)
        if (v.language == lang && v.label == label && v.tcr)
          ++counts[metrics::tcr_category(*v.tcr) == metrics::TcrCategory::AtMostOne ? 0 : 1];
      for (auto c : {metrics::TcrCategory::AtMostOne, metrics::TcrCategory::AboveOne}) {
        std::size_t n = counts[c == metrics::TcrCategory::AtMostOne ? 0 : 1];
        tcr.rows.push_back({std::string(corpus::language_name(lang)), std::string(corpus::label_name(label)),
                            std::string(metrics::tcr_category_name(c)), std::to_string(n),
                            percent(n, counts[0] + counts[1])});
      }
    }
  csv::write_file(cfg.out_path("tcr_categories.csv"), tcr);

  csv::Table senti;
  senti.header = {"label", "sentiment", "count", "percent"};
  for (auto label : {corpus::QualityLabel::Promoted, corpus::QualityLabel::Discouraged}) {
    std::size_t counts[4] = {0, 0, 0, 0}, total = 0;
    for (const auto& v : rows)
      if (v.label == label && v.sp) {
        ++counts[static_cast<int>(*v.sp)];
        ++total;
      }
    for (auto s : {metrics::Sentiment::Positive, metrics::Sentiment::Negative, metrics::Sentiment::Mixed,
                   metrics::Sentiment::Neutral})
      senti.rows.push_back({std::string(corpus::label_name(label)), std::string(metrics::sentiment_name(s)),
                            std::to_string(counts[static_cast<int>(s)]), percent(counts[static_cast<int>(s)], total)});
  }
  csv::write_file(cfg.out_path("sentiment_summary.csv"), senti);
  log << "compare: " << results.size() << " metrics compared\n";
}

void cmd_rank(const RunConfig& cfg, std::ostream& log) {
  auto rows = load_metrics(cfg);
  auto d = ml::build_metric_columns(rows, ml::all_features());
  if (cfg.balanced) d = ml::undersample(d, cfg.seed);
  if (ml::class_entropy(d.y) == 0) log << "warning: single-class data, every information gain is 0\n";
  ensure_out(cfg);
  ml::write_ranking(cfg.out_path("ranking_info_gain.csv"), ml::rank_by_info_gain(d, cfg.bins), "info_gain_nats");
  ml::write_ranking(cfg.out_path("ranking_stump.csv"), ml::rank_by_stump(d, cfg.folds, cfg.seed, cfg.stump_depth),
                    "cv_accuracy");
  log << "rank: " << d.rows() << " rows, " << d.cols() << " features\n";
}

void cmd_train(const RunConfig& cfg, std::ostream& log) {
  auto rows = load_metrics(cfg);
  auto kind = ml::parse_model(cfg.model);
  auto d = training_set(cfg, rows, cfg.features, cfg.balanced);
  ensure_out(cfg);

  ml::GridResult grid;
  const bool search = cfg.hyperparams.empty();
  ml::ModelSpec spec = choose_spec(cfg, kind, d, search, &grid);
  if (search) {
    csv::Table t;
    t.header = {"model", "hyperparams", "cv_accuracy", "best"};
    for (const auto& p : grid.points)
      t.rows.push_back({cfg.model, ml::format_hyperparams(p.hyperparams), text::format_double(p.accuracy),
                        p.hyperparams == grid.best.hyperparams ? "yes" : "no"});
    csv::write_file(cfg.out_path("grid_search.csv"), t);
  }

  auto report = ml::cross_validate(spec, d, cfg.folds, cfg.seed);
  report.feature_set = feature_set_name(cfg.features);
  report.variant = variant_name(cfg.balanced);
  for (const auto& w : report.overall.warnings) log << "warning: " << w << '\n';
  ml::write_eval_reports(cfg.out_path("eval_report.csv"), std::span(&report, 1));

  csv::Table folds;
  folds.header = {"fold", "n", "promoted_precision", "promoted_recall", "promoted_f1", "discouraged_precision",
                  "discouraged_recall", "discouraged_f1", "accuracy"};
  for (std::size_t f = 0; f < report.folds.size(); ++f) {
    const auto& e = report.folds[f];
    folds.rows.push_back({std::to_string(f), std::to_string(e.n), text::format_double(e.promoted.precision),
                          text::format_double(e.promoted.recall), text::format_double(e.promoted.f1),
                          text::format_double(e.discouraged.precision), text::format_double(e.discouraged.recall),
                          text::format_double(e.discouraged.f1), text::format_double(e.accuracy)});
  }
  csv::write_file(cfg.out_path("eval_folds.csv"), folds);

  ml::TrainedModel::train(spec, d).save(cfg.model_path());
  log << "train: " << cfg.model << " [" << spec.describe() << "] cv accuracy " << text::format_double(report.overall.accuracy)
      << " on " << d.rows() << " rows\n";
}

void cmd_predict(const RunConfig& cfg, std::ostream& log) {
  require_file(cfg.model_path(), "model file (run the train command first)");
  auto model = ml::TrainedModel::load(cfg.model_path());
  const auto& columns = model.feature_names();
  if (cfg.features_given) {
    auto requested = ml::expand_columns(ml::resolve_feature_set(cfg.features), cfg.na_policy);
    if (requested != columns)
      throw InvalidArgument("feature set mismatch: model uses {" + join(columns) + "}, requested {" + join(requested) +
                            "}");
  }
  if (cfg.record.empty()) throw InvalidArgument("predict needs a question record (record=... or --record)");
  require_file(cfg.record, "question record");
  auto tags = load_tags(cfg);
  auto meta_path = cfg.out_path("metrics_meta.csv");
  require_file(meta_path, "metrics metadata (run the metrics command first)");
  auto te_range = metrics::read_metrics_meta(meta_path);
  auto lexicon = metrics::SentimentLexicon::load(cfg.lexicon_path());
  auto weights = codeparse::ReadabilityWeights::load(cfg.weights_path());
  auto parsers = parser_registry(cfg);
  metrics::MetricContext ctx{tags, lexicon, weights, parsers};
  const auto policy = policy_of(columns);

  std::ifstream in(cfg.record, std::ios::binary);
  csv::Table t;
  t.header = {"id", "label", "score_promoted", "score_discouraged"};
  std::string line;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    auto q = corpus::parse_record_line(line);
    if (q.score == 0) q.score = 1;  // a question at submission time has no votes; its label is not used here
    auto content = corpus::extract_content(q);
    std::vector<metrics::Diagnostic> diags;
    auto v = metrics::compute_vector(q, content, ctx, diags);
    metrics::apply_te_normalization(std::span(&v, 1), te_range);
    for (const auto& dg : diags) log << "warning: question " << dg.id << " " << dg.field << ": " << dg.message << '\n';
    auto row = ml::feature_row(v, columns, policy);
    if (!row)
      throw InvalidArgument("question " + std::to_string(q.id) +
                            " lacks a feature the model needs and the model has no N/A imputation");
    auto p = model.predict(*row);
    t.rows.push_back({std::to_string(q.id), std::string(corpus::label_name(p.label)), text::format_double(p.scores[0]),
                      text::format_double(p.scores[1])});
  }
  if (t.rows.empty()) throw InvalidArgument("no question record in " + cfg.record);
  ensure_out(cfg);
  csv::write_file(cfg.out_path("predictions.csv"), t);
  log << "predict: " << t.rows.size() << " question(s)\n";
}

void cmd_report(const RunConfig& cfg, std::ostream& log) {
  auto rows = load_metrics(cfg);
  std::vector<ml::ModelKind> kinds;
  if (cfg.report_models == "all") {
    kinds.assign(std::begin(ml::kAllModels), std::end(ml::kAllModels));
  } else {
    for (const auto& m : text::split(cfg.report_models, ',')) kinds.push_back(ml::parse_model(text::trim(m)));
  }
  std::vector<ml::EvalReport> reports;
  for (auto kind : kinds)
    for (const char* features : {"all", "top4"})
      for (bool balanced : {false, true}) {
        auto d = training_set(cfg, rows, features, balanced);
        auto spec = choose_spec(cfg, kind, d, cfg.report_search == "grid", nullptr);
        auto r = ml::cross_validate(spec, d, cfg.folds, cfg.seed);
        r.feature_set = features;
        r.variant = variant_name(balanced);
        reports.push_back(std::move(r));
        log << "report: " << model_name(kind) << " " << features << " " << variant_name(balanced) << " accuracy "
            << text::format_double(reports.back().overall.accuracy) << '\n';
      }
  ensure_out(cfg);
  ml::write_eval_reports(cfg.out_path("table_v.csv"), reports);
}

}  // namespace qqual::app
