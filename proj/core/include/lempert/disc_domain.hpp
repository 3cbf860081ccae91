#pragma once

#include <cstddef>
#include <vector>

#include "lempert/complex_kernel.hpp"
#include "lempert/disc_expr.hpp"
#include "lempert/plane_domain.hpp"

namespace lempert {

/// Finite nonempty set of pairwise distinct interior points of a plane domain.
class PoleSet {
 public:
  static constexpr std::size_t kMaxSize = 64;
  static constexpr double kDistinctTol = 1e-12;

  PoleSet(PlaneDomain domain, std::vector<Complex> points);

  [[nodiscard]] const PlaneDomain& domain() const noexcept { return domain_; }
  [[nodiscard]] const std::vector<Complex>& points() const noexcept { return points_; }
  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
  [[nodiscard]] Complex operator[](std::size_t i) const { return points_[i]; }

  /// Union with a disjoint pole set of the same domain.
  [[nodiscard]] PoleSet merged(const PoleSet& other) const;
  [[nodiscard]] bool intersects(const PoleSet& other) const;

 private:
  PlaneDomain domain_;
  std::vector<Complex> points_;
};

/// A computed Lempert or Green value with the analytic disc that realizes it.
struct EvalResult {
  double value = 0.0;
  /// Disc through the evaluation point: certificate(0) = z.
  DiscExpr certificate = DiscExpr::identity();
  /// certificate(nodes[i]) hits the i-th pole; prod |nodes| = value.
  std::vector<Complex> nodes;
  /// Certified absolute error of `value` (0 for closed forms).
  double error_bound = 0.0;
};

/// Poles closer than this to the evaluation point count as hits (value 0).
inline constexpr double kPoleHitTol = 1e-12;

/// prod_{a in A} |moebius(a, z)|, certified by the automorphism moebius(z)
/// with nodes moebius(z, a).
[[nodiscard]] EvalResult lempert_disc(const PoleSet& poles, Complex z);

/// |moebius(a, z)| for every N >= 1.
[[nodiscard]] EvalResult lempert_disc_N(Complex a, Complex z, int n);

/// The Green function of the disc; coincides with lempert_disc.
[[nodiscard]] double green_disc(const PoleSet& poles, Complex z);

}  // namespace lempert
