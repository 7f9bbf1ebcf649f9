#pragma once

#include <string>
#include <vector>

namespace qqual::corpus {

// Lowercases and trims; throws FormatError unless 1..5 non-empty tags remain.
std::vector<std::string> normalize_tags(const std::vector<std::string>& raw);

}  // namespace qqual::corpus
