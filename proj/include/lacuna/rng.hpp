#pragma once

#include <cstdint>
#include <cmath>

#include "lacuna/common.hpp"

namespace lacuna {

// Deterministic counter-seeded random stream. Streams are derived from
// (seed, stream-index) so that trial k of a battery sees the same draws
// whether the battery runs serially or fanned out over a worker pool.
//
// SplitMix64 core; uniform/normal variates are generated from the raw 64-bit
// output with fixed formulas, so results do not depend on the standard
// library's distribution implementations.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream = 0) {
    state_ = mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
    state_ = mix(state_ ^ (stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

  // Standard normal via Box-Muller (pairs cached).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Complex cnormal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im);
  }

  // ±1 with equal probability.
  int sign() { return (next_u64() >> 63) ? 1 : -1; }

  CVec gaussian_cvec(int n) {
    CVec v(n);
    for (int i = 0; i < n; ++i) v[i] = cnormal();
    return v;
  }

  // Uniform point on the complex unit sphere.
  CVec unit_cvec(int n) {
    CVec v = gaussian_cvec(n);
    const double nrm = v.norm();
    if (nrm == 0.0) {
      v.setZero();
      v[0] = 1.0;
      return v;
    }
    return v / nrm;
  }

  CMat gaussian_cmat(int rows, int cols) {
    CMat m(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) m(i, j) = cnormal();
    return m;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace lacuna
