#pragma once

#include <cstdint>
#include <functional>
#include <span>

namespace sentopic {

// Number of count vectors with sum `length` over `vocab_size` symbols,
// C(D+K-1, K-1), saturating at uint64 max on overflow.
std::uint64_t count_vector_space_size(std::size_t vocab_size,
                                      std::uint32_t length);

// Calls fn once per count vector of the given total, in lexicographically
// descending order of the first coordinate. The span passed to fn is reused
// between calls.
void for_each_count_vector(
    std::size_t vocab_size, std::uint32_t length,
    const std::function<void(std::span<const std::uint32_t>)>& fn);

// log of the multinomial coefficient D! / prod_k counts[k]!.
double log_multinomial_coefficient(std::span<const std::uint32_t> counts);

}  // namespace sentopic
