#pragma once

#include <complex>
#include <span>
#include <vector>

namespace lempert {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Point of the open unit disc. Construction validates |value| < 1.
class DiscPoint {
 public:
  DiscPoint() = default;
  explicit DiscPoint(Complex value);

  [[nodiscard]] Complex value() const noexcept { return value_; }
  [[nodiscard]] double abs() const noexcept { return std::abs(value_); }
  operator Complex() const noexcept { return value_; }  // NOLINT(google-explicit-constructor)

 private:
  Complex value_{0.0, 0.0};
};

/// Disc automorphism z -> (alpha - z) / (1 - conj(alpha) z). It is an involution.
class MoebiusTransform {
 public:
  explicit MoebiusTransform(DiscPoint alpha) : alpha_(alpha) {}

  [[nodiscard]] DiscPoint alpha() const noexcept { return alpha_; }
  [[nodiscard]] Complex operator()(Complex z) const noexcept;

 private:
  DiscPoint alpha_;
};

/// (alpha - z) / (1 - conj(alpha) z) without validation; hot-path helper.
[[nodiscard]] inline Complex moebius(Complex alpha, Complex z) noexcept {
  return (alpha - z) / (1.0 - std::conj(alpha) * z);
}

/// 1 - |moebius(alpha, z)|^2 computed without cancellation.
[[nodiscard]] double moebius_defect(Complex alpha, Complex z) noexcept;

/// Pseudo-hyperbolic distance |moebius(alpha, z)|.
[[nodiscard]] inline double pseudo_distance(Complex alpha, Complex z) noexcept {
  return std::abs(moebius(alpha, z));
}

[[nodiscard]] DiscPoint moebius_apply(const MoebiusTransform& t, DiscPoint z);

/// Finite Blaschke product exp(i*phase) * prod_j moebius(zeros[j], z).
/// Factors are the plain Moebius maps; `normalized_from_zeros` attaches the
/// unimodular constants conj(z_j)/|z_j| so that b(0) = prod |z_j|.
class BlaschkeProduct {
 public:
  BlaschkeProduct() = default;
  BlaschkeProduct(double phase, std::vector<Complex> zeros);

  static BlaschkeProduct normalized_from_zeros(std::span<const Complex> zeros);

  [[nodiscard]] double phase() const noexcept { return phase_; }
  [[nodiscard]] const std::vector<Complex>& zeros() const noexcept { return zeros_; }
  [[nodiscard]] std::size_t degree() const noexcept { return zeros_.size(); }

  /// Valid on the closed disc.
  [[nodiscard]] Complex operator()(Complex z) const;

 private:
  double phase_ = 0.0;
  std::vector<Complex> zeros_;
};

[[nodiscard]] Complex blaschke_eval(const BlaschkeProduct& b, Complex z);

/// Roots of z * moebius(a, z) = mu, i.e. of z^2 - a(1+mu) z + mu = 0.
struct NodeRoots {
  Complex small;  ///< |small| <= sqrt|mu|
  Complex large;  ///< |large| >= sqrt|mu|
};

/// Requires 0 <= a < 1 and |mu| < 1. The larger-magnitude root is formed
/// first and the other is recovered from the product of the roots. Ties
/// in modulus put the root with nonnegative imaginary part first (then the
/// one with nonnegative real part).
[[nodiscard]] NodeRoots solve_node_quadratic(double a, Complex mu);

/// z * moebius(a, z) for real a.
[[nodiscard]] inline Complex node_map(double a, Complex z) noexcept {
  return z * moebius(Complex(a, 0.0), z);
}

}  // namespace lempert
