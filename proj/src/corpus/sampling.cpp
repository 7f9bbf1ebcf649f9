#include <algorithm>

#include "qqual/corpus.hpp"
#include "qqual/error.hpp"
#include "qqual/random.hpp"

namespace qqual::corpus {

std::vector<std::size_t> undersample_indices(std::span<const QualityLabel> labels, std::uint64_t seed) {
  std::vector<std::size_t> promoted, discouraged;
  for (std::size_t i = 0; i < labels.size(); ++i)
    (labels[i] == QualityLabel::Promoted ? promoted : discouraged).push_back(i);
  if (promoted.empty() || discouraged.empty())
    throw InvalidArgument("undersampling needs both classes present");
  auto& majority = promoted.size() >= discouraged.size() ? promoted : discouraged;
  auto& minority = &majority == &promoted ? discouraged : promoted;
  Rng rng(seed);
  shuffle(std::span<std::size_t>(majority), rng);
  majority.resize(minority.size());
  std::vector<std::size_t> out(minority);
  out.insert(out.end(), majority.begin(), majority.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qqual::corpus
