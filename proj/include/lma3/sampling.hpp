#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

namespace lma3 {

// Sampling primitives built on raw mt19937 draws. The standard distribution
// classes are implementation-defined in how many values they consume, which
// would make snapshots non-portable across standard libraries; these consume
// exactly one draw per sample.

// Uniform in [0, 1) from a single 32-bit draw.
inline double unit_draw(std::mt19937& rng) {
  return std::ldexp(static_cast<double>(rng()), -32);
}

// Uniform index in [0, n). n must be positive.
inline size_t uniform_index(std::mt19937& rng, size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: empty range");
  size_t i = static_cast<size_t>(unit_draw(rng) * static_cast<double>(n));
  return i < n ? i : n - 1;
}

// Index drawn proportionally to the given non-negative weights.
inline size_t weighted_index(std::mt19937& rng, const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("weighted_index: negative weight");
    total += w;
  }
  if (weights.empty() || total <= 0.0)
    throw std::invalid_argument("weighted_index: no positive weight");
  double r = unit_draw(rng) * total;
  double cumulative = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    cumulative += weights[i];
    if (r < cumulative) return i;
  }
  return weights.size() - 1;  // floating-point edge; r landed on the far end
}

// First k positions of a Fisher-Yates shuffle of 0..n-1; order is part of the
// sample (callers present items in drawn order).
inline std::vector<size_t> sample_indices(std::mt19937& rng, size_t n, size_t k) {
  if (k > n) k = n;
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  for (size_t i = 0; i < k; ++i) {
    size_t j = i + uniform_index(rng, n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

}  // namespace lma3
