#include "sentopic/document.hpp"

#include <algorithm>
#include <map>

namespace sentopic {

std::vector<double> Document::dense(std::size_t vocab_size) const {
  std::vector<double> out(vocab_size, 0.0);
  for (const auto& [idx, count] : entries) {
    out[idx] = static_cast<double>(count);
  }
  return out;
}

std::uint32_t Document::count_at(std::uint32_t word_index) const {
  const auto it = std::lower_bound(
      entries.begin(), entries.end(), word_index,
      [](const auto& entry, std::uint32_t idx) { return entry.first < idx; });
  if (it != entries.end() && it->first == word_index) {
    return it->second;
  }
  return 0;
}

Document make_document(std::span<const std::uint32_t> dense_counts) {
  Document doc;
  for (std::uint32_t i = 0; i < dense_counts.size(); ++i) {
    if (dense_counts[i] > 0) {
      doc.entries.emplace_back(i, dense_counts[i]);
      doc.length += dense_counts[i];
    }
  }
  return doc;
}

Document make_document_sparse(
    std::vector<std::pair<std::uint32_t, std::uint32_t>> entries) {
  std::map<std::uint32_t, std::uint32_t> merged;
  for (const auto& [idx, count] : entries) {
    merged[idx] += count;
  }
  Document doc;
  for (const auto& [idx, count] : merged) {
    if (count > 0) {
      doc.entries.emplace_back(idx, count);
      doc.length += count;
    }
  }
  return doc;
}

}  // namespace sentopic
