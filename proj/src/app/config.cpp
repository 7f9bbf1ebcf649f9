#include <filesystem>
#include <fstream>

#include "qqual/app.hpp"
#include "qqual/error.hpp"
#include "qqual/text.hpp"

namespace qqual::app {

namespace {

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw InvalidArgument(std::string(key) + ": expected true or false, got '" + std::string(v) + "'");
}

std::int64_t parse_int_key(std::string_view key, std::string_view v, std::int64_t min) {
  std::int64_t n;
  try {
    n = text::parse_int(v);
  } catch (const Error&) {
    throw InvalidArgument(std::string(key) + ": expected an integer, got '" + std::string(v) + "'");
  }
  if (n < min) throw InvalidArgument(std::string(key) + " must be at least " + std::to_string(min));
  return n;
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& config_keys() {
  static const std::vector<std::pair<std::string, std::string>> keys{
      {"input", ""},
      {"format", "record_lines"},
      {"min_answers", "1"},
      {"exclude_zero_score", "true"},
      {"max_year", "2017"},
      {"languages", "csharp,java,javascript,python"},
      {"seed", "42"},
      {"out", "out"},
      {"lexicon", "<bundled>"},
      {"readability_weights", "<bundled>"},
      {"tags", "<built from the corpus>"},
      {"parser.<language>", "<language>-rd"},
      {"model", "decision_tree"},
      {"hyperparams", "<grid search>"},
      {"grid", "default"},
      {"variant", "balanced"},
      {"features", "all"},
      {"na_policy", "impute"},
      {"folds", "10"},
      {"bins", "10"},
      {"stump_depth", "1"},
      {"record", ""},
      {"model_file", "<out>/model.qqm"},
      {"report_models", "all"},
      {"report_search", "grid"},
  };
  return keys;
}

void RunConfig::set(std::string_view key, std::string_view raw) {
  const std::string value = text::trim(raw);
  if (key == "input") {
    input = value;
  } else if (key == "format") {
    format = corpus::parse_format(value);
  } else if (key == "min_answers") {
    filters.min_answers = parse_int_key(key, value, 0);
  } else if (key == "exclude_zero_score") {
    filters.exclude_zero_score = parse_bool(key, value);
  } else if (key == "max_year") {
    filters.max_year = static_cast<int>(parse_int_key(key, value, 0));
  } else if (key == "languages") {
    filters.languages.clear();
    for (const auto& part : text::split(value, ',')) {
      auto name = text::trim(part);
      if (!name.empty()) filters.languages.insert(corpus::parse_language(text::to_lower_ascii(name)));
    }
    if (filters.languages.empty()) throw InvalidArgument("languages: empty selection");
  } else if (key == "seed") {
    seed = static_cast<std::uint64_t>(parse_int_key(key, value, 0));
  } else if (key == "out") {
    if (value.empty()) throw InvalidArgument("out: empty path");
    out = value;
  } else if (key == "lexicon") {
    lexicon = value;
  } else if (key == "readability_weights") {
    readability_weights = value;
  } else if (key == "tags") {
    tags = value;
  } else if (key.rfind("parser.", 0) == 0) {
    std::string lang = std::string(key.substr(7));
    corpus::parse_language(lang);
    parsers[lang] = value;
  } else if (key == "model") {
    ml::parse_model(value);
    model = value;
  } else if (key == "hyperparams") {
    ml::parse_hyperparams(value);
    hyperparams = value;
  } else if (key == "grid") {
    grid = value;
  } else if (key == "variant") {
    if (value != "balanced" && value != "imbalanced")
      throw InvalidArgument("variant: expected balanced or imbalanced, got '" + value + "'");
    balanced = value == "balanced";
  } else if (key == "features") {
    ml::resolve_feature_set(value);
    features = value;
    features_given = true;
  } else if (key == "na_policy") {
    if (value == "impute")
      na_policy = ml::NaPolicy::ImputeZeroWithFlag;
    else if (value == "drop")
      na_policy = ml::NaPolicy::DropRows;
    else
      throw InvalidArgument("na_policy: expected impute or drop, got '" + value + "'");
  } else if (key == "folds") {
    folds = static_cast<std::size_t>(parse_int_key(key, value, 2));
  } else if (key == "bins") {
    bins = static_cast<std::size_t>(parse_int_key(key, value, 1));
  } else if (key == "stump_depth") {
    stump_depth = static_cast<int>(parse_int_key(key, value, 0));
  } else if (key == "record") {
    record = value;
  } else if (key == "model_file") {
    model_file = value;
  } else if (key == "report_models") {
    if (value != "all")
      for (const auto& m : text::split(value, ',')) ml::parse_model(text::trim(m));
    report_models = value;
  } else if (key == "report_search") {
    if (value != "grid" && value != "fixed")
      throw InvalidArgument("report_search: expected grid or fixed, got '" + value + "'");
    report_search = value;
  } else {
    throw InvalidArgument("unknown config key '" + std::string(key) + "'");
  }
}

void RunConfig::apply_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::string t = text::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw FormatError(path + ":" + std::to_string(n) + ": expected key = value");
    try {
      set(text::trim(t.substr(0, eq)), t.substr(eq + 1));
    } catch (const Error& e) {
      throw InvalidArgument(path + ":" + std::to_string(n) + ": " + e.what());
    }
  }
}

std::string RunConfig::lexicon_path() const {
  return lexicon.empty() ? std::string(QQUAL_DATA_DIR) + "/sentiment_lexicon.tsv" : lexicon;
}

std::string RunConfig::weights_path() const {
  return readability_weights.empty() ? std::string(QQUAL_DATA_DIR) + "/code_readability_weights.tsv"
                                     : readability_weights;
}

std::string RunConfig::model_path() const { return model_file.empty() ? out_path("model.qqm") : model_file; }

std::string RunConfig::out_path(std::string_view name) const {
  return (std::filesystem::path(out) / std::string(name)).string();
}

ml::Grid parse_grid(std::string_view spec, ml::ModelKind kind) {
  if (text::trim(spec) == "default") return ml::default_grid(kind);
  ml::Grid grid;
  for (const auto& part : text::split(spec, ';')) {
    std::string item = text::trim(part);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("grid entry '" + item + "' is not name=v1|v2");
    std::vector<double> values;
    for (const auto& v : text::split(item.substr(eq + 1), '|')) {
      std::string t = text::trim(v);
      values.push_back(t == "unlimited" ? 0.0 : text::parse_double(t));
    }
    grid.emplace_back(text::trim(item.substr(0, eq)), std::move(values));
  }
  ml::expand_grid(kind, grid);
  return grid;
}

}  // namespace qqual::app
