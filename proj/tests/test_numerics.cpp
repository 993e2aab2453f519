#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "sentopic/enumeration.hpp"
#include "sentopic/numerics.hpp"
#include "sentopic/rng.hpp"

using namespace sentopic;

TEST_CASE("sigmoid is stable and bounded") {
  CHECK(sigmoid(0.0) == doctest::Approx(0.5));
  CHECK(sigmoid(800.0) == doctest::Approx(1.0));
  CHECK(sigmoid(-800.0) >= 0.0);
  CHECK(sigmoid(-800.0) <= 1e-300);
  CHECK(std::isfinite(sigmoid(-1e308)));
  CHECK(sigmoid(3.0) + sigmoid(-3.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("softplus is stable for large arguments") {
  CHECK(softplus(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(softplus(1000.0) == doctest::Approx(1000.0));
  CHECK(softplus(-1000.0) >= 0.0);
  CHECK(softplus(-1000.0) <= 1e-300);
  CHECK(softplus(2.5) ==
        doctest::Approx(std::log1p(std::exp(2.5))).epsilon(1e-15));
}

TEST_CASE("log_sum_exp handles shifted and degenerate inputs") {
  const std::vector<double> xs{1.0, 2.0, 3.0};
  const double direct =
      std::log(std::exp(1.0) + std::exp(2.0) + std::exp(3.0));
  CHECK(log_sum_exp(xs) == doctest::Approx(direct).epsilon(1e-14));
  const std::vector<double> big{1000.0, 1000.0};
  CHECK(log_sum_exp(big) ==
        doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-14));
  CHECK(log_sum_exp({}) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("softmax_inplace normalizes with a shift") {
  std::vector<double> logits{1000.0, 1000.0 + std::log(3.0)};
  softmax_inplace(logits);
  CHECK(logits[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(logits[1] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("count vector space size is the stars-and-bars count") {
  CHECK(count_vector_space_size(3, 3) == 10);  // C(5,2)
  CHECK(count_vector_space_size(1, 7) == 1);
  CHECK(count_vector_space_size(4, 2) == 10);  // C(5,3)
  CHECK(count_vector_space_size(2, 0) == 1);
}

TEST_CASE("count vector enumeration visits each composition once") {
  std::size_t visited = 0;
  std::uint32_t total_check = 0;
  for_each_count_vector(3, 4, [&](std::span<const std::uint32_t> counts) {
    ++visited;
    std::uint32_t sum = 0;
    for (const auto c : counts) sum += c;
    total_check = sum;
    CHECK(sum == 4);
  });
  CHECK(visited == count_vector_space_size(3, 4));
  CHECK(total_check == 4);
}

TEST_CASE("log multinomial coefficient") {
  const std::vector<std::uint32_t> counts{2, 1, 0};
  CHECK(log_multinomial_coefficient(counts) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-12));
  const std::vector<std::uint32_t> ones{1, 1, 1};
  CHECK(log_multinomial_coefficient(ones) ==
        doctest::Approx(std::log(6.0)).epsilon(1e-12));
}

TEST_CASE("rng streams are deterministic and purpose-separated") {
  Rng a(42, "alpha");
  Rng b(42, "alpha");
  Rng c(42, "beta");
  const std::uint64_t va = a.next_u64();
  CHECK(va == b.next_u64());
  CHECK(va != c.next_u64());
}

TEST_CASE("rng uniform and normal have sane moments") {
  Rng rng(7, "moments");
  const std::size_t n = 200000;
  double usum = 0.0, nsum = 0.0, nsq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    usum += rng.uniform();
    const double z = rng.normal();
    nsum += z;
    nsq += z * z;
  }
  CHECK(usum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(nsum / n == doctest::Approx(0.0).epsilon(1.0).scale(0.01));
  CHECK(nsq / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("rng multinomial sums to n") {
  Rng rng(9, "multi");
  const std::vector<double> probs{0.1, 0.2, 0.3, 0.4};
  const auto counts = rng.multinomial(1000, probs);
  std::uint32_t total = 0;
  for (const auto c : counts) total += c;
  CHECK(total == 1000);
}
