#pragma once

// Seeded generators for property tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "numtheory.hpp"

namespace oracle {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  // Nonzero integer in [-bound, bound].
  std::int64_t nonzero(std::int64_t bound) {
    std::int64_t x = 0;
    while (x == 0) x = integer(-bound, bound);
    return x;
  }

  // Coprime (w1, w2) with |w| <= bound, not both zero.
  std::pair<std::int64_t, std::int64_t> coprime_pair(std::int64_t bound) {
    while (true) {
      const std::int64_t a = integer(-bound, bound);
      const std::int64_t b = integer(-bound, bound);
      if ((a != 0 || b != 0) && euclid(a, b) == 1) return {a, b};
    }
  }

  // Spinless occupation pattern with exactly k of n sites filled.
  std::vector<int> sites(int n, int k) {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    std::shuffle(all.begin(), all.end(), rng_);
    all.resize(static_cast<std::size_t>(k));
    std::sort(all.begin(), all.end());
    return all;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
