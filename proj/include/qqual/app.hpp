#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qqual/corpus.hpp"
#include "qqual/ml/dataset.hpp"
#include "qqual/ml/harness.hpp"

namespace qqual::app {

// Everything a command needs. Set from a key=value config file, then from flags.
struct RunConfig {
  std::string input;
  corpus::InputFormat format = corpus::InputFormat::RecordLines;
  corpus::FilterSpec filters;
  std::uint64_t seed = 42;
  std::string out = "out";

  std::string lexicon;              // empty: bundled lexicon
  std::string readability_weights;  // empty: bundled weights
  std::string tags;                 // empty: build the tag table from the ingested corpus
  std::map<std::string, std::string> parsers;  // language -> backend name

  std::string model = "decision_tree";
  std::string hyperparams;  // empty: grid search
  std::string grid = "default";
  bool balanced = true;
  std::string features = "all";
  bool features_given = false;
  ml::NaPolicy na_policy = ml::NaPolicy::ImputeZeroWithFlag;
  std::size_t folds = ml::kDefaultFolds;
  std::size_t bins = 10;
  int stump_depth = 1;

  std::string record;      // predict: record_lines file with the question(s)
  std::string model_file;  // empty: <out>/model.qqm
  std::string report_models = "all";
  std::string report_search = "grid";  // grid or fixed

  // Throws InvalidArgument for an unknown key or a bad value.
  void set(std::string_view key, std::string_view value);
  // Applies every "key = value" line; '#' starts a comment line.
  void apply_file(const std::string& path);

  std::string lexicon_path() const;
  std::string weights_path() const;
  std::string model_path() const;
  std::string out_path(std::string_view name) const;
};

// Config keys with their defaults, for --help and the README.
const std::vector<std::pair<std::string, std::string>>& config_keys();

// "name=v1|v2;name2=v3", or "default" for the built-in grid of the model.
ml::Grid parse_grid(std::string_view spec, ml::ModelKind kind);

// Each command writes only under cfg.out, logs warnings to `log` and throws on
// fatal errors.
void cmd_ingest(const RunConfig& cfg, std::ostream& log);
void cmd_metrics(const RunConfig& cfg, std::ostream& log);
void cmd_compare(const RunConfig& cfg, std::ostream& log);
void cmd_rank(const RunConfig& cfg, std::ostream& log);
void cmd_train(const RunConfig& cfg, std::ostream& log);
void cmd_predict(const RunConfig& cfg, std::ostream& log);
void cmd_report(const RunConfig& cfg, std::ostream& log);

}  // namespace qqual::app
