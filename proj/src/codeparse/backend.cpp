#include <functional>

#include "qqual/codeparse.hpp"
#include "qqual/error.hpp"

#include "parser_base.hpp"
#include "parsers.hpp"

namespace qqual::codeparse {

namespace {

class BuiltinBackend : public ParserBackend {
 public:
  BuiltinBackend(std::string name, void (*fn)(std::string_view)) : name_(std::move(name)), fn_(fn) {}

  std::string_view name() const override { return name_; }
  bool reentrant() const override { return true; }

  ParseVerdict parse(std::string_view source) const override {
    ParseVerdict v;
    try {
      fn_(source);
      v.complete = true;
    } catch (const detail::LexError& e) {
      v.errors.push_back({e.line, e.col, e.message});
    } catch (const detail::ParseFailure& e) {
      v.errors.push_back({e.line, e.col, e.message});
    }
    return v;
  }

 private:
  std::string name_;
  void (*fn_)(std::string_view);
};

struct BuiltinEntry {
  std::string_view name;
  Language language;
  void (*fn)(std::string_view);
};

constexpr BuiltinEntry kBuiltins[] = {
    {"csharp-rd", Language::CSharp, detail::parse_csharp},
    {"java-rd", Language::Java, detail::parse_java},
    {"javascript-rd", Language::JavaScript, detail::parse_javascript},
    {"python-rd", Language::Python, detail::parse_python},
};

}  // namespace

std::vector<std::string> builtin_backend_names() {
  std::vector<std::string> out;
  for (const auto& b : kBuiltins) out.emplace_back(b.name);
  return out;
}

std::unique_ptr<ParserBackend> make_builtin_backend(std::string_view name) {
  for (const auto& b : kBuiltins)
    if (b.name == name) return std::make_unique<BuiltinBackend>(std::string(b.name), b.fn);
  throw InvalidArgument("unknown parser backend '" + std::string(name) + "'");
}

void BackendRegistry::register_backend(Language language, std::unique_ptr<ParserBackend> backend) {
  if (!backend) throw InvalidArgument("null parser backend");
  if (!backend->reentrant()) backend = std::make_unique<SerializingBackend>(std::move(backend));
  backends_[language] = std::shared_ptr<ParserBackend>(std::move(backend));
}

const ParserBackend& BackendRegistry::backend(Language language) const {
  auto it = backends_.find(language);
  if (it == backends_.end())
    throw InvalidArgument("no parser backend registered for " + std::string(corpus::language_name(language)));
  return *it->second;
}

BackendRegistry BackendRegistry::builtin() {
  BackendRegistry r;
  for (const auto& b : kBuiltins) r.register_backend(b.language, make_builtin_backend(b.name));
  return r;
}

BackendRegistry BackendRegistry::from_config(const std::map<std::string, std::string>& assignment) {
  BackendRegistry r;
  for (const auto& [lang, backend] : assignment) r.register_backend(corpus::parse_language(lang), make_builtin_backend(backend));
  return r;
}

const BackendRegistry& default_registry() {
  static const BackendRegistry r = BackendRegistry::builtin();
  return r;
}

ParseVerdict parse_verdict(const MergedSnippet& snippet, const BackendRegistry& registry) {
  if (snippet.source.empty()) throw InvalidArgument("empty snippet");
  return registry.backend(snippet.language).parse(snippet.source);
}

Parsability check_parsable(const MergedSnippet& snippet, const BackendRegistry& registry) {
  return parse_verdict(snippet, registry).ok() ? Parsability::Parsable : Parsability::Unparsable;
}

double parsability_rate(std::span<const Parsability> results) {
  if (results.empty()) throw InvalidArgument("parsability rate of an empty slice");
  std::size_t n = 0;
  for (auto r : results) n += r == Parsability::Parsable;
  return 100.0 * static_cast<double>(n) / static_cast<double>(results.size());
}

}  // namespace qqual::codeparse
