#pragma once

#include <random>

#include "dynr/iso21.hpp"

namespace dynr {

/// Seeded sampler with a portable uniform: the mt19937_64 stream is fixed by
/// the standard, and the bit mapping below avoids distribution objects whose
/// output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) {
    const double u = (eng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  Vec3 vec3(double scale = 1.0) {
    return Vec3(uniform(-scale, scale), uniform(-scale, scale),
                uniform(-scale, scale));
  }

  AlgebraElement algebra(double scale = 1.0) {
    return AlgebraElement(vec3(scale), vec3(scale));
  }

  Mat3 lorentz(double scale = 1.0) { return exp_so21(vec3(scale)); }

  PoincareElement poincare(double scale = 1.0) {
    return exp_iso21(algebra(scale));
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace dynr
