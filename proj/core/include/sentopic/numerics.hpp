#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace sentopic {

// Logistic function, stable for large |x|.
inline double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// log(1 + e^x) without overflow for large positive x.
inline double softplus(double x) {
  if (x > 0.0) {
    return x + std::log1p(std::exp(-x));
  }
  return std::log1p(std::exp(x));
}

// log(sum_i e^{x_i}) with max shift. Empty input yields -inf.
inline double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) {
    return -std::numeric_limits<double>::infinity();
  }
  const double m = *std::max_element(xs.begin(), xs.end());
  if (!std::isfinite(m)) {
    return m;
  }
  double sum = 0.0;
  for (double x : xs) {
    sum += std::exp(x - m);
  }
  return m + std::log(sum);
}

// Normalizes logits in place to a probability vector, max-shifted.
inline void softmax_inplace(std::span<double> logits) {
  if (logits.empty()) {
    return;
  }
  const double m = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double& x : logits) {
    x = std::exp(x - m);
    sum += x;
  }
  for (double& x : logits) {
    x /= sum;
  }
}

inline bool all_finite(std::span<const double> xs) {
  return std::all_of(xs.begin(), xs.end(),
                     [](double x) { return std::isfinite(x); });
}

}  // namespace sentopic
