#include "sentopic/lexicon.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sentopic/errors.hpp"

namespace sentopic {

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open lexicon file: " + path.string());
  }
  SentimentLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    std::istringstream ss(line);
    std::string token;
    Weights w;
    std::string extra;
    if (!(ss >> token >> w.neutral >> w.positive >> w.negative) ||
        (ss >> extra)) {
      throw DataError("lexicon " + path.string() + " line " +
                      std::to_string(line_no) + ": malformed entry");
    }
    for (double v : {w.neutral, w.positive, w.negative}) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw DataError("lexicon " + path.string() + " line " +
                        std::to_string(line_no) +
                        ": weight outside [0,1]");
      }
    }
    const double sum = w.neutral + w.positive + w.negative;
    if (std::abs(sum - 1.0) > 1e-6) {
      throw DataError("lexicon " + path.string() + " line " +
                      std::to_string(line_no) + ": weights sum to " +
                      std::to_string(sum) + ", expected 1");
    }
    if (lex.entries_.count(token) != 0) {
      throw DataError("lexicon " + path.string() + " line " +
                      std::to_string(line_no) + ": duplicate token '" +
                      token + "'");
    }
    lex.entries_.emplace(std::move(token), w);
  }
  return lex;
}

void SentimentLexicon::add(std::string token, Weights weights) {
  entries_[std::move(token)] = weights;
}

const SentimentLexicon::Weights* SentimentLexicon::find(
    const std::string& token) const {
  const auto it = entries_.find(token);
  return it == entries_.end() ? nullptr : &it->second;
}

Polarity SentimentLexicon::polarity(const Weights& w) {
  if (w.neutral >= w.positive && w.neutral >= w.negative) {
    return Polarity::neutral;
  }
  return w.positive >= w.negative ? Polarity::positive : Polarity::negative;
}

std::size_t SentimentLexicon::positive_count() const {
  std::size_t n = 0;
  for (const auto& [token, w] : entries_) {
    n += polarity(w) == Polarity::positive ? 1 : 0;
  }
  return n;
}

std::size_t SentimentLexicon::negative_count() const {
  std::size_t n = 0;
  for (const auto& [token, w] : entries_) {
    n += polarity(w) == Polarity::negative ? 1 : 0;
  }
  return n;
}

LexiconOverlap lexicon_intersection(const Vocabulary& vocab,
                                    const SentimentLexicon& lexicon) {
  LexiconOverlap overlap;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    const SentimentLexicon::Weights* w = lexicon.find(vocab.word(i));
    if (w == nullptr) {
      continue;
    }
    overlap.shared.push_back(i);
    switch (SentimentLexicon::polarity(*w)) {
      case Polarity::positive:
        overlap.positive.push_back(i);
        break;
      case Polarity::negative:
        overlap.negative.push_back(i);
        break;
      case Polarity::neutral:
        break;
    }
  }
  return overlap;
}

}  // namespace sentopic
