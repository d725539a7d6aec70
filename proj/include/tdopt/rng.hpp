#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace tdopt {

// splitmix64. Chosen because the algorithm is published, tiny, and trivially
// portable, so seeds recorded in manifests reproduce the same circuits in any
// language. All randomness in the project flows through this class.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Unbiased integer in [0, bound), bound >= 1. Rejection sampling keeps the
  // draw sequence identical on every platform.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t reject = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= reject) return r % bound;
    }
  }

  // Uniform in [0, 1) with 53 significant bits.
  double unit_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit_real() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// Derives an independent substream seed from a master seed and a path of
// indices (round, generation, slot, ...). Parallel consumers seeded this way
// cannot perturb each other's draws, so thread scheduling never changes
// results.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = Rng(master).next_u64();
  for (const std::uint64_t p : path) {
    s = Rng(s ^ (p + 0x9e3779b97f4a7c15ull)).next_u64();
  }
  return s;
}

}  // namespace tdopt
