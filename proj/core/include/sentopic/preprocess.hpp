#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace sentopic {

enum class StemmerKind { none, porter };

struct PreprocessConfig {
  std::unordered_set<std::string> stop_words;  // applied before stemming
  StemmerKind stemmer = StemmerKind::porter;

  // Built-in English stop list + Porter stemming.
  static PreprocessConfig english();
  // No stop words, no stemming; tokens pass through lowercased.
  static PreprocessConfig raw();
};

// Classic Porter suffix-stripping algorithm (the original 1980 rule set).
// Expects a lowercase ASCII word; words of length <= 2 are returned as is.
std::string porter_stem(std::string_view word);

// The built-in English stop list (also shipped as data/stopwords_en.txt).
const std::unordered_set<std::string>& default_stop_words();

// One word per line, lowercased.
std::unordered_set<std::string> load_stop_words(
    const std::filesystem::path& path);

// Lowercases, splits into maximal alphanumeric runs, drops stop words, then
// stems. Deterministic for a fixed config; empty input yields an empty list.
std::vector<std::string> preprocess(std::string_view raw_text,
                                    const PreprocessConfig& config);

}  // namespace sentopic
