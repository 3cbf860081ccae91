#pragma once

#include <cstddef>
#include <vector>

#include "lempert/cover_map.hpp"
#include "lempert/disc_domain.hpp"

namespace lempert {

/// Moduli of the preimages of a under the normalized cover, enumerated by
/// winding until `max_count` are collected or 1 - |eta| < cutoff; ascending.
[[nodiscard]] std::vector<double> preimage_moduli(const CoverMap& cover, Complex a,
                                                  std::size_t max_count, double cutoff = 0.0);

/// N-pole Lempert function: product of the N smallest preimage moduli of a
/// under the cover normalized at z. Certificate: the cover itself (composed
/// with the identity rotation), nodes = those N preimages. On the unit disc
/// this is |moebius(a, z)| for every N.
[[nodiscard]] EvalResult lempert_N_plane(const PlaneDomain& domain, Complex a, Complex z, int n);

/// prod_{a in A} min{|eta| : pi_z(eta) = a}.
[[nodiscard]] EvalResult lempert_poleset_plane(const PoleSet& poles, Complex z);

/// Convenience: lempert_poleset_plane for a single pole.
[[nodiscard]] double lempert_single(const PlaneDomain& domain, Complex a, Complex z);

struct GreenValue {
  double value = 0.0;
  /// |true / value - 1| <= tail_bound.
  double tail_bound = 0.0;
  /// Number of preimages summed explicitly.
  std::size_t lifts_used = 0;
};

inline constexpr std::size_t kMaxGreenLifts = 10000;

/// Green function with pole a as the product of all preimage moduli. The
/// part of the product not summed explicitly is estimated with a certified
/// bound: exponential for the annulus, an integral comparison with a
/// trapezoid remainder for the punctured disc (whose preimage defects decay
/// only like 1/k^2). Throws NumericError if tol_tail needs more than 10^4
/// explicit preimages.
[[nodiscard]] GreenValue green_plane(const PlaneDomain& domain, Complex a, Complex z,
                                     double tol_tail = 1e-12);

/// prod_{a in A} green_plane(a, z); tail bounds combine multiplicatively.
[[nodiscard]] GreenValue green_poleset_plane(const PoleSet& poles, Complex z, double tol_tail = 1e-12);

/// Certified tau with prod_{j > n} |eta_j| >= 1 - tau, the eta_j sorted
/// ascending, i.e. green >= l^n * (1 - tau).
[[nodiscard]] double product_tail_bound(const PlaneDomain& domain, Complex a, Complex z, std::size_t n,
                                        double tol_tail = 1e-12);

/// Point a on the ray z + r * direction (r > 0) with l_D({a}, z) = t, to
/// 1e-10. Scans for the first sign change of l - t, then bisects; returns
/// the root closest to z.
[[nodiscard]] Complex find_pole_with_value(const PlaneDomain& domain, Complex z, double t,
                                           Complex direction);

/// Largest r such that z + s * direction stays interior for s < r.
[[nodiscard]] double ray_exit_distance(const PlaneDomain& domain, Complex z, Complex direction);

}  // namespace lempert
