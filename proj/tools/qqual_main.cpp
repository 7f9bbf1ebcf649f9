#include <iostream>

#include "CLI11.hpp"
#include "qqual/app.hpp"
#include "qqual/error.hpp"

namespace {

std::string key_help() {
  std::string s = "Config keys (key = value, one per line; flags override the file):\n";
  for (const auto& [k, v] : qqual::app::config_keys()) s += "  " + k + " (default: " + (v.empty() ? "none" : v) + ")\n";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Objective quality metrics, group comparisons and classifiers for Q&A questions"};
  app.footer(key_help());
  app.require_subcommand(1);

  std::string config_file, seed, out, format, languages, features, input, model, hyperparams, record, variant;
  std::vector<std::string> overrides;
  bool balanced = false, imbalanced = false;
  app.add_option("--config", config_file, "key=value config file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "master seed");
  app.add_option("--out", out, "output directory");
  app.add_option("--format", format, "dump_posts or record_lines");
  app.add_option("--languages", languages, "comma-separated language list");
  auto* bal = app.add_flag("--balanced", balanced, "undersample to equal classes");
  app.add_flag("--imbalanced", imbalanced, "keep the class ratio")->excludes(bal);
  app.add_option("--features", features, "all, top4 or a comma-separated metric list");
  app.add_option("--input", input, "input corpus file");
  app.add_option("--model", model, "decision_tree, random_forest, knn, gaussian_nb or neural_net");
  app.add_option("--hyperparams", hyperparams, "fixed hyperparameters name=value;... (skips grid search)");
  app.add_option("--record", record, "record_lines file with the question(s) to predict");
  app.add_option("--set", overrides, "any config key as key=value; repeatable");

  const char* commands[][2] = {{"ingest", "load, filter and label a corpus; build the tag table"},
                               {"metrics", "compute the metric table"},
                               {"compare", "compare promoted against discouraged questions per metric"},
                               {"rank", "rank the metrics by information gain and single-feature accuracy"},
                               {"train", "grid-search, cross-validate and train one model"},
                               {"predict", "predict the class of question records"},
                               {"report", "cross-validate every model, feature set and variant"}};
  for (auto& c : commands) app.add_subcommand(c[0], c[1])->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    qqual::app::RunConfig cfg;
    if (!config_file.empty()) cfg.apply_file(config_file);
    for (const auto& o : overrides) {
      auto eq = o.find('=');
      if (eq == std::string::npos) throw qqual::InvalidArgument("--set expects key=value, got '" + o + "'");
      cfg.set(o.substr(0, eq), o.substr(eq + 1));
    }
    if (!seed.empty()) cfg.set("seed", seed);
    if (!out.empty()) cfg.set("out", out);
    if (!format.empty()) cfg.set("format", format);
    if (!languages.empty()) cfg.set("languages", languages);
    if (!features.empty()) cfg.set("features", features);
    if (!input.empty()) cfg.set("input", input);
    if (!model.empty()) cfg.set("model", model);
    if (!hyperparams.empty()) cfg.set("hyperparams", hyperparams);
    if (!record.empty()) cfg.set("record", record);
    if (balanced) cfg.set("variant", "balanced");
    if (imbalanced) cfg.set("variant", "imbalanced");

    const std::string name = app.get_subcommands().front()->get_name();
    using Cmd = void (*)(const qqual::app::RunConfig&, std::ostream&);
    const std::pair<const char*, Cmd> table[] = {
        {"ingest", qqual::app::cmd_ingest},   {"metrics", qqual::app::cmd_metrics}, {"compare", qqual::app::cmd_compare},
        {"rank", qqual::app::cmd_rank},       {"train", qqual::app::cmd_train},     {"predict", qqual::app::cmd_predict},
        {"report", qqual::app::cmd_report}};
    for (auto& [n, fn] : table)
      if (name == n) fn(cfg, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
