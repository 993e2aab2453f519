#include "sentopic/vocabulary.hpp"

#include <algorithm>
#include <fstream>

#include "sentopic/errors.hpp"

namespace sentopic {

Vocabulary::Vocabulary(std::vector<std::string> words)
    : words_(std::move(words)) {
  if (words_.empty()) {
    throw DataError("vocabulary: needs at least one token");
  }
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i].empty()) {
      throw DataError("vocabulary: empty token at index " + std::to_string(i));
    }
    if (!index_.emplace(words_[i], i).second) {
      throw DataError("vocabulary: duplicate token '" + words_[i] + "'");
    }
  }
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open vocabulary file: " + path.string());
  }
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    words.push_back(line);
  }
  return Vocabulary(std::move(words));
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write vocabulary file: " + path.string());
  }
  for (const auto& w : words_) {
    out << w << '\n';
  }
}

Vocabulary build_vocabulary(
    const std::vector<std::vector<std::string>>& token_lists,
    std::size_t max_size) {
  if (max_size == 0) {
    throw DataError("build_vocabulary: max_size must be >= 1");
  }
  std::unordered_map<std::string, std::uint64_t> freq;
  for (const auto& tokens : token_lists) {
    for (const auto& t : tokens) {
      ++freq[t];
    }
  }
  std::vector<std::pair<std::string, std::uint64_t>> ranked(freq.begin(),
                                                            freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) {
      return a.second > b.second;
    }
    return a.first < b.first;
  });
  if (ranked.size() > max_size) {
    ranked.resize(max_size);
  }
  std::vector<std::string> words;
  words.reserve(ranked.size());
  for (auto& [token, count] : ranked) {
    words.push_back(std::move(token));
  }
  return Vocabulary(std::move(words));
}

}  // namespace sentopic
