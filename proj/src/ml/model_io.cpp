// Model file layout, whitespace separated, one record per line:
//
//   qqual-model v1
//   kind <model name>
//   seed <unsigned>
//   hyperparams <name=value;...> or "-"
//   features <count> <name>...
//   standardizer none | standardizer <count>, then "mean <count> ..." and "scale <count> ..."
//   <classifier body: tree / forest / knn / gnb / mlp record>
//   end
//
// Numbers use the shortest round-trip decimal form, so a loaded model predicts
// exactly like the saved one.
#include <fstream>
#include <sstream>

#include "io_util.hpp"
#include "qqual/ml/model.hpp"

namespace qqual::ml {

namespace {
constexpr std::string_view kMagic = "qqual-model";
constexpr std::string_view kVersion = "v1";
}  // namespace

void TrainedModel::write(std::ostream& out) const {
  if (!classifier_) throw InvalidArgument("model is not trained");
  out << kMagic << ' ' << kVersion << '\n';
  out << "kind " << model_name(spec_.kind) << '\n';
  out << "seed " << spec_.seed << '\n';
  std::string hp = spec_.describe();
  out << "hyperparams " << (hp.empty() ? "-" : hp) << '\n';
  out << "features " << features_.size();
  for (const auto& f : features_) out << ' ' << f;
  out << '\n';
  if (standardizer_) {
    out << "standardizer " << standardizer_->mean.size() << '\n';
    detail::write_values(out, "mean", standardizer_->mean);
    detail::write_values(out, "scale", standardizer_->scale);
  } else {
    out << "standardizer none\n";
  }
  classifier_->save(out);
  out << "end\n";
}

TrainedModel TrainedModel::read(std::istream& in) {
  std::string magic = detail::read_token(in), version = detail::read_token(in);
  if (magic != kMagic) throw FormatError("not a model file");
  if (version != kVersion) throw FormatError("unsupported model file version '" + version + "'");
  TrainedModel m;
  detail::expect_key(in, "kind");
  m.spec_.kind = parse_model(detail::read_token(in));
  detail::expect_key(in, "seed");
  m.spec_.seed = std::stoull(detail::read_token(in));
  detail::expect_key(in, "hyperparams");
  std::string hp = detail::read_token(in);
  if (hp != "-") m.spec_.hyperparams = parse_hyperparams(hp);
  detail::expect_key(in, "features");
  std::size_t n = detail::read_count(in);
  for (std::size_t i = 0; i < n; ++i) m.features_.push_back(detail::read_token(in));
  detail::expect_key(in, "standardizer");
  std::string st = detail::read_token(in);
  if (st != "none") {
    Standardizer s;
    s.mean = detail::read_values(in, "mean");
    s.scale = detail::read_values(in, "scale");
    if (s.mean.size() != n || s.scale.size() != n) throw FormatError("model file: standardizer dimension mismatch");
    m.standardizer_ = std::move(s);
  }
  std::shared_ptr<Classifier> c = make_classifier(m.spec_);
  c->load(in);
  m.classifier_ = std::move(c);
  detail::expect_key(in, "end");
  return m;
}

void TrainedModel::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  write(out);
  if (!out) throw IoError("error writing " + path);
}

TrainedModel TrainedModel::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return read(in);
}

}  // namespace qqual::ml
