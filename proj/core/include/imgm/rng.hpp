#pragma once

#include <cstdint>

namespace imgm {

// Counter-based generator: (seed, stream_index) fully determines the
// sequence, so any single RR set or simulation can be reproduced without
// replaying everything generated before it, regardless of thread schedule.
// Streams are derived by mixing the index into the seed (murmur3 finalizer)
// and then stepping splitmix64.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_index)
      : state_(mix(seed ^ mix(stream_index + 0x9e3779b97f4a7c15ULL))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound), unbiased by rejection. bound must be > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

  bool next_bernoulli(double p) { return next_unit() < p; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
  }

  std::uint64_t state_;
};

}  // namespace imgm
