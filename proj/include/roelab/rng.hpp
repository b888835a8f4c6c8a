#pragma once

#include <cstdint>
#include <span>

namespace roelab {

/// Counter-based deterministic RNG. Every draw is a pure function of
/// (seed, counter), so ensembles evaluated in any order give identical
/// values. The mixer is splitmix64.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t raw(std::uint64_t counter) const {
    std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(raw(counter) >> 11) * 0x1.0p-53;
  }

  /// Uniform in [-half_width, half_width).
  double uniform_sym(std::uint64_t counter, double half_width) const {
    return half_width * (2.0 * uniform(counter) - 1.0);
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Order-independent key for per-site disorder draws: a hash of the
/// site coordinates (FNV-1a over the raw ints), so the value at a site
/// does not depend on window size or enumeration order.
inline std::uint64_t site_key(std::span<const int> coords) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (int c : coords) {
    auto u = static_cast<std::uint64_t>(static_cast<std::int64_t>(c));
    for (int b = 0; b < 8; ++b) {
      h ^= (u >> (8 * b)) & 0xffULL;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

/// Sequential convenience wrapper around CounterRng for sampling loops.
class SequenceRng {
 public:
  explicit SequenceRng(std::uint64_t seed) : rng_(seed) {}

  double uniform() { return rng_.uniform(next_++); }
  double uniform_sym(double half_width) { return rng_.uniform_sym(next_++, half_width); }
  /// Integer in [0, n).
  int index(int n) { return static_cast<int>(rng_.raw(next_++) % static_cast<std::uint64_t>(n)); }

 private:
  CounterRng rng_;
  std::uint64_t next_ = 0;
};

}  // namespace roelab
