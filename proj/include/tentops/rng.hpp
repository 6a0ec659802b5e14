#pragma once

#include <cstdint>

namespace tentops {

// splitmix64; identical stream on every platform, unlike the stdlib
// distribution adapters.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1), 53 bits
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in [lo,hi)
  double next_double(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t state_;
};

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

}
