#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace lempert::testing {

/// Deterministic generator for property tests.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * std::generate_canonical<double, 53>(engine_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  /// Uniform in the annulus r_min <= |z| <= r_max.
  std::complex<double> disc_point(double r_min = 0.0, double r_max = 0.95) {
    const double r = uniform(r_min, r_max);
    return std::polar(r, uniform(-M_PI, M_PI));
  }
  std::complex<double> unit() { return std::polar(1.0, uniform(-M_PI, M_PI)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lempert::testing
