#include "sentopic/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sentopic {
namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t raw_seed) : root_(raw_seed), engine_(raw_seed) {}

Rng::Rng(std::uint64_t seed, std::string_view purpose)
    : Rng(splitmix64(seed ^ fnv1a(purpose))) {}

Rng::Rng(std::uint64_t seed, std::string_view purpose, std::uint64_t index)
    : Rng(splitmix64(splitmix64(seed ^ fnv1a(purpose)) + index)) {}

Rng Rng::derive(std::string_view purpose, std::uint64_t index) const {
  return Rng(splitmix64(splitmix64(root_ ^ fnv1a(purpose)) + index));
}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform() {
  // 53-bit mantissa from the top bits.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

bool Rng::bernoulli(double p) { return uniform() < p; }

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("uniform_index: bound must be positive");
  }
  // Rejection sampling on the top range to avoid modulo bias.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::size_t Rng::categorical(std::span<const double> probs) {
  const double u = uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) {
      return i;
    }
  }
  return probs.size() - 1;  // guards against rounding of the final bin
}

std::vector<std::uint32_t> Rng::multinomial(std::uint32_t n,
                                            std::span<const double> probs) {
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cdf[i] = acc;
  }
  std::vector<std::uint32_t> counts(probs.size(), 0);
  for (std::uint32_t d = 0; d < n; ++d) {
    const double u = uniform() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx =
        it == cdf.end() ? probs.size() - 1
                        : static_cast<std::size_t>(it - cdf.begin());
    ++counts[idx];
  }
  return counts;
}

}  // namespace sentopic
