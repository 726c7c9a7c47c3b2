#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace shapeforge {

// Deterministic RNG used by every sampler. std::shuffle and the standard
// distributions are implementation-defined, so bounded draws and shuffles
// are spelled out here to keep outputs byte-identical across platforms.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform draw in [0, n). n must be > 0.
  std::uint64_t bounded(std::uint64_t n) {
    // Rejection sampling to avoid modulo bias.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % n;
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    if (items.size() < 2) return;
    for (std::size_t i = items.size() - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(bounded(i + 1));
      std::swap(items[i], items[j]);
    }
  }

  // k distinct indices drawn uniformly without replacement from [0, n).
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(bounded(n - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
  }

  // Independent stream for a (seed, salt) pair, e.g. one per stratum.
  static SeededRng with_salt(std::uint64_t seed, std::uint64_t salt) {
    return SeededRng(seed ^ (salt * 0x9e3779b97f4a7c15ULL + 0xbf58476d1ce4e5b9ULL));
  }

 private:
  std::mt19937_64 engine_;
};

// FNV-1a over a string, used to derive order keys from (seed, id) pairs so
// that shuffled processing orders are independent of input order.
inline std::uint64_t fnv1a64(const std::string& s, std::uint64_t seed = 0) {
  std::uint64_t h = 1469598103934665603ULL ^ seed;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace shapeforge
