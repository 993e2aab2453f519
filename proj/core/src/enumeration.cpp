#include "sentopic/enumeration.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace sentopic {

std::uint64_t count_vector_space_size(std::size_t vocab_size,
                                      std::uint32_t length) {
  // C(D + K - 1, K - 1) multiplicatively, watching for overflow.
  const std::uint64_t n = length + vocab_size - 1;
  const std::uint64_t k = vocab_size - 1;
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    if (result > std::numeric_limits<std::uint64_t>::max() / num) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result = result * num / i;
  }
  return result;
}

namespace {

void enumerate(std::vector<std::uint32_t>& counts, std::size_t pos,
               std::uint32_t remaining,
               const std::function<void(std::span<const std::uint32_t>)>& fn) {
  if (pos + 1 == counts.size()) {
    counts[pos] = remaining;
    fn(counts);
    return;
  }
  for (std::uint32_t c = remaining + 1; c-- > 0;) {
    counts[pos] = c;
    enumerate(counts, pos + 1, remaining - c, fn);
  }
}

}  // namespace

void for_each_count_vector(
    std::size_t vocab_size, std::uint32_t length,
    const std::function<void(std::span<const std::uint32_t>)>& fn) {
  if (vocab_size == 0) {
    return;
  }
  std::vector<std::uint32_t> counts(vocab_size, 0);
  enumerate(counts, 0, length, fn);
}

double log_multinomial_coefficient(std::span<const std::uint32_t> counts) {
  std::uint64_t total = 0;
  for (const std::uint32_t c : counts) {
    total += c;
  }
  double value = std::lgamma(static_cast<double>(total) + 1.0);
  for (const std::uint32_t c : counts) {
    value -= std::lgamma(static_cast<double>(c) + 1.0);
  }
  return value;
}

}  // namespace sentopic
