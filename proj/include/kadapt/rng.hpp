#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace kadapt {

// Deterministic RNG with platform-independent draws. mt19937_64 itself is
// pinned by the standard; the bounded draw below avoids
// std::uniform_int_distribution, whose output is implementation-defined.
class Rng {
public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  // Unbiased draw from {lo, ..., hi} via rejection sampling.
  long long uniform(long long lo, long long hi) {
    if (lo > hi) throw std::invalid_argument("uniform: empty range");
    const uint64_t range = static_cast<uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<long long>(next());  // full 64-bit span
    const uint64_t limit = range * (UINT64_MAX / range);
    uint64_t draw;
    do {
      draw = next();
    } while (draw >= limit);
    return lo + static_cast<long long>(draw % range);
  }

  // First k positions of a Fisher-Yates shuffle of {0, ..., n-1}, ascending.
  std::vector<int> sample_indices(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("sample_indices: bad k");
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i) {
      const int j = static_cast<int>(uniform(i, n - 1));
      std::swap(pool[i], pool[j]);
    }
    std::vector<int> out(pool.begin(), pool.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  std::mt19937_64 eng_;
};

// Stable mix for deriving per-run seeds from (base seed, run index).
inline uint64_t mix_seed(uint64_t seed, uint64_t salt) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace kadapt
