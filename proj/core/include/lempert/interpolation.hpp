#pragma once

#include <span>
#include <vector>

#include "lempert/complex_kernel.hpp"
#include "lempert/disc_expr.hpp"

namespace lempert {

/// g(a) = prod |small root|, h(a) = prod |large root| of z * moebius(a, z) = mu_j.
struct CurveValues {
  double g = 0.0;
  double h = 0.0;
};

/// Requires every mu_j nonzero and inside the disc, 0 <= a < 1.
[[nodiscard]] CurveValues curves_gh(std::span<const Complex> mu, double a);

enum class Branch { Small, Large };

struct Lemma4Problem {
  std::vector<Complex> mu;  ///< at most 64 points; zeros allowed
  double q = 0.0;           ///< prod |mu_j| < q < 1
};

/// f(0) = 0, f(eta_j) = mu_j, prod |eta_j| = q.
struct Lemma4Solution {
  double a = 0.0;
  Branch branch = Branch::Small;
  std::vector<Complex> eta;
  DiscExpr f = DiscExpr::identity();
  /// Parameter of the outer factor z * moebius(alpha, z) when zero targets
  /// were lifted first; 0 when no lifting was needed.
  double reduction_alpha = 0.0;
  /// Targets actually interpolated by the inner factor.
  std::vector<Complex> reduced_mu;
};

inline constexpr double kLemma4ValueTol = 1e-11;
inline constexpr int kLemma4MaxBisections = 200;

/// Finds a in [0, 1) with g(a) = q (q <= sqrt p) or h(a) = q (otherwise) by a
/// bracket scan on the grid i/1024 refined with 1 - 2^-k, then bisection.
/// Zero targets are first lifted through z * moebius(alpha, z): zeros go to
/// alpha, nonzero targets to their small-root preimages. alpha = 1 - 2^-k,
/// k = 1..20, is tried in order, then alpha = 2^-k, until the reduced
/// product drops below q. Throws DomainError on invalid
/// input and NumericError if no bracket exists.
[[nodiscard]] Lemma4Solution lemma4_solve(const Lemma4Problem& problem);

struct Theorem5Certificate {
  /// Disc into the product domain with xi(0) = (z, w), xi(eta_j) = (a_j, b).
  DiscExpr xi = DiscExpr::identity();
  std::vector<Complex> eta;
  Lemma4Solution lemma;
  /// prod |eta_j| as evaluated; the certified upper bound (alpha to 1e-11).
  double bound = 0.0;
};

/// phi(0) = z, phi(lambda_j) = a_j; psi(0) = w, psi(zeta) = b. Requires
/// max(prod |lambda_j|, |zeta|) < alpha < 1. The returned disc is
/// (phi o f, psi((zeta / alpha) moebius(alpha, B))) with f from
/// lemma4_solve(lambda, alpha) and B the normalized Blaschke product with
/// zeros eta, so prod |eta_j| = alpha bounds the product Lempert function.
[[nodiscard]] Theorem5Certificate theorem5_certificate(const DiscExpr& phi, std::span<const Complex> lambda,
                                                       const DiscExpr& psi, Complex zeta, double alpha);

}  // namespace lempert
