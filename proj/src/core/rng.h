#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace tonemorph {

/// Seeded random source with portable derived draws. std::mt19937_64 output
/// is pinned by the standard; the bounded draws below avoid
/// std::uniform_int_distribution, whose mapping is implementation-defined,
/// so identical seeds give identical runs on any platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi], inclusive. Rejection sampling, unbiased.
  int uniform_int(int lo, int hi) {
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return lo + static_cast<int>(draw % span);
  }

  size_t uniform_index(size_t n) { return static_cast<size_t>(uniform_int(0, static_cast<int>(n) - 1)); }

  /// k distinct indices from [0, n), ascending. Partial Fisher-Yates.
  std::vector<size_t> sample_indices(size_t n, size_t k) {
    std::vector<size_t> pool(n);
    for (size_t i = 0; i < n; ++i) pool[i] = i;
    if (k > n) k = n;
    for (size_t i = 0; i < k; ++i) {
      size_t j = i + uniform_index(n - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tonemorph
