#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace sentopic {

// Bag-of-words document: sparse non-negative word counts over a vocabulary of
// size K (held by the owning corpus), the total length D, and optional
// sentiment / topic labels. The project-wide binary sentiment convention is
// 0 = negative, 1 = positive.
struct Document {
  // (word index, count), strictly ascending by index, counts > 0.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;
  std::uint32_t length = 0;  // D = sum of counts
  std::optional<std::uint32_t> sentiment;
  std::optional<std::uint32_t> topic;

  bool empty() const { return length == 0; }

  std::vector<double> dense(std::size_t vocab_size) const;
  std::uint32_t count_at(std::uint32_t word_index) const;
};

// Builds a document from a dense count vector; zero counts are dropped.
Document make_document(std::span<const std::uint32_t> dense_counts);

// Builds a document from unsorted (index, count) pairs. Duplicate indices are
// merged; zero counts dropped.
Document make_document_sparse(
    std::vector<std::pair<std::uint32_t, std::uint32_t>> entries);

}  // namespace sentopic
