#include "sentopic/preprocess.hpp"

#include <cctype>
#include <fstream>

#include "sentopic/errors.hpp"

namespace sentopic {
namespace {

// Snowball English stop list.
constexpr const char* kStopWords[] = {
    "i",          "me",       "my",      "myself",  "we",      "our",
    "ours",       "ourselves", "you",    "your",    "yours",   "yourself",
    "yourselves", "he",       "him",     "his",     "himself", "she",
    "her",        "hers",     "herself", "it",      "its",     "itself",
    "they",       "them",     "their",   "theirs",  "themselves", "what",
    "which",      "who",      "whom",    "this",    "that",    "these",
    "those",      "am",       "is",      "are",     "was",     "were",
    "be",         "been",     "being",   "have",    "has",     "had",
    "having",     "do",       "does",    "did",     "doing",   "would",
    "should",     "could",    "ought",   "a",       "an",      "the",
    "and",        "but",      "if",      "or",      "because", "as",
    "until",      "while",    "of",      "at",      "by",      "for",
    "with",       "about",    "against", "between", "into",    "through",
    "during",     "before",   "after",   "above",   "below",   "to",
    "from",       "up",       "down",    "in",      "out",     "on",
    "off",        "over",     "under",   "again",   "further", "then",
    "once",       "here",     "there",   "when",    "where",   "why",
    "how",        "all",      "any",     "both",    "each",    "few",
    "more",       "most",     "other",   "some",    "such",    "no",
    "nor",        "not",      "only",    "own",     "same",    "so",
    "than",       "too",      "very",    "can",     "will",    "just",
    "don",        "now",      "s",       "t",
};

}  // namespace

const std::unordered_set<std::string>& default_stop_words() {
  static const std::unordered_set<std::string> words(std::begin(kStopWords),
                                                     std::end(kStopWords));
  return words;
}

std::unordered_set<std::string> load_stop_words(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open stop word file: " + path.string());
  }
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (!line.empty()) {
      for (char& c : line) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
      words.insert(line);
    }
  }
  return words;
}

PreprocessConfig PreprocessConfig::english() {
  PreprocessConfig config;
  config.stop_words = default_stop_words();
  config.stemmer = StemmerKind::porter;
  return config;
}

PreprocessConfig PreprocessConfig::raw() {
  PreprocessConfig config;
  config.stemmer = StemmerKind::none;
  return config;
}

std::vector<std::string> preprocess(std::string_view raw_text,
                                    const PreprocessConfig& config) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.empty()) {
      return;
    }
    if (config.stop_words.count(current) == 0) {
      tokens.push_back(config.stemmer == StemmerKind::porter
                           ? porter_stem(current)
                           : current);
    }
    current.clear();
  };
  for (char raw : raw_text) {
    const auto c = static_cast<unsigned char>(raw);
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

}  // namespace sentopic
