#pragma once

#include <cstdint>
#include <vector>

namespace dop {

// splitmix64. Chosen over std::mt19937_64 + <random> distributions because the
// standard distributions are implementation-defined and the engine promises
// byte-identical output for a fixed seed on any platform.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n); rejection keeps it unbiased.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    std::uint64_t r;
    while ((r = next()) >= limit) {
    }
    return r % n;
  }

  // Deterministic substream derivation, e.g. per (seed, split, sentence).
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    Rng t(a ^ (0x9e3779b97f4a7c15ULL * (b + 0x165667b19e3779f9ULL)));
    return t.next();
  }
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix(mix(a, b), c);
  }
};

// Fisher-Yates; std::shuffle is implementation-defined and would break
// cross-platform reproducibility of corpus splits.
template <class T>
void deterministic_shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    using std::swap;
    swap(v[i - 1], v[j]);
  }
}

}  // namespace dop
