#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "hstar/carleson.hpp"

namespace hstar {

/// Seeded generator with hand-rolled distributions so identical seeds give
/// identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // in [0, 1)
    return (engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {  // Box-Muller
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  std::complex<double> complex_gaussian() { return {gaussian(), gaussian()}; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hstar
