#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace sentopic {

// Seeded random stream. All randomness in the project flows from one explicit
// 64-bit seed through named streams (one per purpose: "init", "shuffle",
// "gibbs", ...), so that any run is reproducible and independent stages do
// not share state. Samplers are hand-rolled on top of the engine output so
// results do not depend on the standard library's distribution
// implementations.
class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view purpose);
  Rng(std::uint64_t seed, std::string_view purpose, std::uint64_t index);

  // Derives an independent child stream, e.g. one per AIS run.
  Rng derive(std::string_view purpose, std::uint64_t index = 0) const;

  std::uint64_t next_u64();

  // Uniform in [0, 1).
  double uniform();

  // Standard normal via Box-Muller (two uniforms per draw, no cached spare).
  double normal();

  bool bernoulli(double p);

  // Uniform integer in [0, bound).
  std::uint64_t uniform_index(std::uint64_t bound);

  // Draws an index with the given (normalized) probabilities.
  std::size_t categorical(std::span<const double> probs);

  // n independent categorical draws accumulated into counts (length = probs
  // size). Uses a cumulative table with binary search.
  std::vector<std::uint32_t> multinomial(std::uint32_t n,
                                         std::span<const double> probs);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[uniform_index(i)]);
    }
  }

 private:
  explicit Rng(std::uint64_t raw_seed);
  std::uint64_t root_;  // pre-engine mix, kept so derive() can fork streams
  std::mt19937_64 engine_;
};

}  // namespace sentopic
