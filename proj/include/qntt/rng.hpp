#pragma once

#include <cstdint>
#include <random>

namespace qntt {

// Seedable random source for the sampling procedures. mt19937_64 is fully
// specified by the standard, so a fixed seed reproduces the same draws on
// every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Uniform draw from [0, bound), bound >= 1, by rejection sampling.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

private:
  std::mt19937_64 engine_;
};

} // namespace qntt
