#pragma once

// Seeded RNG wrapper with hand-rolled integer/real draws so that results
// depend only on the seed, not on the standard library's distribution
// implementations. Reproducibility of runs and golden files rests on this.

#include <cassert>
#include <cstdint>
#include <random>
#include <vector>

namespace rmtshop {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform integer in [0, n). Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    assert(n > 0);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = gen_();
    while (x >= limit) x = gen_();
    return x % n;
  }

  // Uniform integer in [lo, hi], inclusive.
  long long range(long long lo, long long hi) {
    assert(lo <= hi);
    return lo + static_cast<long long>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Uniform real in [0, 1).
  double real01() { return (gen_() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return real01() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    assert(!v.empty());
    return v[static_cast<std::size_t>(below(v.size()))];
  }

 private:
  std::mt19937_64 gen_;
};

// Stable seed derivation for independent streams (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace rmtshop
