#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "sentopic/vocabulary.hpp"

namespace sentopic {

enum class Polarity { neutral, positive, negative };

// Word -> (neutral, positive, negative) weight triple, each weight in [0, 1]
// and each triple summing to 1.
class SentimentLexicon {
 public:
  struct Weights {
    double neutral = 0.0;
    double positive = 0.0;
    double negative = 0.0;
  };

  // File format: `token w_neutral w_positive w_negative`, whitespace
  // separated, one entry per line. Throws DataError naming the line number
  // on malformed lines, duplicate tokens, weights outside [0,1], or triples
  // not summing to 1 within 1e-6.
  static SentimentLexicon load(const std::filesystem::path& path);

  void add(std::string token, Weights weights);

  std::size_t size() const { return entries_.size(); }
  const std::unordered_map<std::string, Weights>& entries() const {
    return entries_;
  }
  const Weights* find(const std::string& token) const;

  std::size_t positive_count() const;
  std::size_t negative_count() const;

  // A word is neutral when its neutrality weight is at least as large as both
  // polar weights; otherwise the larger of (positive, negative) wins, with an
  // exact tie going to positive.
  static Polarity polarity(const Weights& w);

 private:
  std::unordered_map<std::string, Weights> entries_;
};

// Vocabulary indices shared with the lexicon, and their polarity split.
// `shared` covers every shared word including neutral ones; `positive` and
// `negative` partition the non-neutral part. All index lists are ascending.
struct LexiconOverlap {
  std::vector<std::size_t> shared;
  std::vector<std::size_t> positive;
  std::vector<std::size_t> negative;
};

LexiconOverlap lexicon_intersection(const Vocabulary& vocab,
                                    const SentimentLexicon& lexicon);

}  // namespace sentopic
