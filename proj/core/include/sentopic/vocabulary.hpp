#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sentopic {

// Ordered word list fixing the dictionary size K. Word -> index lookup is the
// exact inverse of the ordered list.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Throws DataError on duplicate or empty tokens.
  explicit Vocabulary(std::vector<std::string> words);

  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }
  const std::string& word(std::size_t index) const { return words_[index]; }
  std::optional<std::size_t> index_of(std::string_view token) const;

  // One token per line; line number = index.
  static Vocabulary load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.words_ == b.words_;
  }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Keeps the max_size most frequent tokens, ties broken lexicographically.
// The result is ordered by descending frequency, then lexicographically.
// Fewer distinct tokens than max_size yields a smaller vocabulary.
Vocabulary build_vocabulary(
    const std::vector<std::vector<std::string>>& token_lists,
    std::size_t max_size);

}  // namespace sentopic
