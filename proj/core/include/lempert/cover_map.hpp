#pragma once

#include <cstddef>
#include <vector>

#include "lempert/complex_kernel.hpp"
#include "lempert/plane_domain.hpp"

namespace lempert {

/// One preimage of a target point under the normalized cover pi_z.
struct Lift {
  int winding = 0;          ///< k in log(a) + 2*pi*i*k
  double log_modulus = 0.0; ///< log|eta|; -inf when eta = 0
  double defect = 1.0;      ///< 1 - |eta|^2, accurate near the circle
  Complex node;             ///< eta itself, with pi_z(eta) = a

  [[nodiscard]] double modulus() const;
};

/// Normalized universal covering pi_z = pi o moebius(base_lift) of a plane
/// domain, with pi_z(0) = z.
///
/// The raw covers are fixed closed forms:
///   annulus (L = -ln R): pi(s) = exp((iL/pi) * Log((1+s)/(1-s)) - L/2),
///   punctured disc:       pi(s) = exp((s+1)/(s-1)),
///   unit disc:            pi = identity.
/// Preimages are parametrized in the strip |Im t| < pi/2 (annulus, via
/// s = tanh(t/2)) or the left half-plane (punctured disc, via the Cayley map
/// s = (t+1)/(t-1)); moduli and nodes are evaluated from those coordinates
/// so points exponentially close to the circle keep full relative accuracy
/// in 1 - |eta|.
class CoverMap {
 public:
  /// Base lift: the lift of z of minimal modulus (ties: smallest argument in [0, 2pi)).
  CoverMap(PlaneDomain domain, Complex base_point);
  /// Base lift with an explicit winding offset; every choice gives the
  /// same normalized moduli (deck invariance).
  CoverMap(PlaneDomain domain, Complex base_point, int base_winding);

  [[nodiscard]] const PlaneDomain& domain() const noexcept { return domain_; }
  [[nodiscard]] Complex base_point() const noexcept { return base_point_; }
  [[nodiscard]] int base_winding() const noexcept { return base_winding_; }
  /// zeta0 with pi(zeta0) = z (disc coordinates).
  [[nodiscard]] Complex base_lift() const;

  /// Un-normalized cover pi.
  [[nodiscard]] Complex raw(Complex zeta) const;
  /// Normalized cover pi_z.
  [[nodiscard]] Complex operator()(Complex zeta) const;

  /// Preimage of a (interior) with the given winding. The disc has a
  /// single preimage (winding 0).
  [[nodiscard]] Lift lift(Complex a, int winding) const;
  /// The `count` preimages of smallest modulus, ascending (fewer for the disc).
  [[nodiscard]] std::vector<Lift> smallest_lifts(Complex a, std::size_t count) const;
  [[nodiscard]] Lift minimal_lift(Complex a) const;

  /// Winding of the minimal lift of a.
  [[nodiscard]] int nearest_winding(Complex a) const;

  /// Parameter-plane coordinate (strip or half-plane; the disc point itself
  /// for the unit disc) of the preimage of a with the given winding.
  [[nodiscard]] Complex parameter(Complex a, int winding) const;
  /// Spacing of consecutive windings along the parameter plane's periodic
  /// direction (2*pi^2/L for the annulus, 2*pi for the punctured disc).
  [[nodiscard]] double winding_period() const;
  [[nodiscard]] Complex base_parameter() const noexcept { return base_parameter_; }
  /// -ln R for the annulus, 0 otherwise.
  [[nodiscard]] double annulus_log_length() const;

 private:
  [[nodiscard]] Lift lift_from_parameter(Complex t, int winding) const;
  [[nodiscard]] double periodic_coordinate(Complex t) const;

  PlaneDomain domain_;
  Complex base_point_;
  int base_winding_ = 0;
  Complex base_parameter_;
};

/// build_cover: validates that z is interior.
[[nodiscard]] CoverMap build_cover(const PlaneDomain& domain, Complex z);

}  // namespace lempert
