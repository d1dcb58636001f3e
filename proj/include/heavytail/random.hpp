#pragma once

#include <cstdint>
#include <random>

namespace heavytail {

// Reproducible random stream. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; the variate transforms below are
// implemented here rather than taken from <random> because the standard
// distributions are implementation-defined. One seed gives one stream on
// every conforming toolchain.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1), 53 bits of resolution.
  double uniform_open() {
    for (;;) {
      const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

  // Standard normal by the Box-Muller transform; the second variate of
  // each pair is cached.
  double normal();

  // Exponential with unit mean.
  double exponential();

private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

} // namespace heavytail
