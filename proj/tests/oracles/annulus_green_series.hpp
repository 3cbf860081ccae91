#pragma once

// Green function of the annulus {R < |z| < 1} by the method of images in
// logarithmic coordinates. Independent of the covering-map machinery.

#include <cmath>
#include <complex>

namespace lempert::testing {

inline double image_log_term(double e, double phi) {
  // -log|1 - e^{-e} e^{i phi}|
  const std::complex<double> w = std::polar(std::exp(-e), phi);
  return -std::log(std::abs(1.0 - w));
}

/// exp(-G) with G the classical Green function with pole a, at z.
inline double annulus_green_series(double inner_radius, std::complex<double> a, std::complex<double> z) {
  const double L = -std::log(inner_radius);
  const double rz = std::log(std::abs(z));
  const double ra = std::log(std::abs(a));
  const double lo = std::min(rz, ra);
  const double hi = std::max(rz, ra);
  const double phi = std::arg(z) - std::arg(a);
  double u = (lo + L) * (-hi) / L;
  const double e1 = hi - lo;
  const double e2 = -(lo + hi);
  const double e3 = 2.0 * L + lo + hi;
  const double e4 = 2.0 * L - e1;
  for (int m = 0; m < 100000; ++m) {
    const double shift = 2.0 * m * L;
    const double term = image_log_term(e1 + shift, phi) - image_log_term(e2 + shift, phi) -
                        image_log_term(e3 + shift, phi) + image_log_term(e4 + shift, phi);
    u += term;
    if (m > 0 && std::exp(-(std::min({e1, e2, e3, e4}) + shift)) < 1e-18) break;
  }
  return std::exp(-u);
}

}  // namespace lempert::testing
