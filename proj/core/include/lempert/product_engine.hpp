#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lempert/complex_kernel.hpp"
#include "lempert/disc_domain.hpp"
#include "lempert/interpolation.hpp"
#include "lempert/node_optimizer.hpp"
#include "lempert/plane_domain.hpp"

namespace lempert {

/// Two-sided estimate of l_{D x G}(A x {b}, (z, w)), D the domain of A.
struct BoundsReport {
  double lower = 0.0;  ///< max{l_D(A, z), l_G^{#A}(b, w)}
  double upper = 0.0;  ///< certified: realized by `certificate`
  double l_D = 0.0;
  double l_G = 0.0;
  double l_G_N = 0.0;  ///< l_G^{#A}(b, w)
  double slack = 0.0;  ///< upper - max{l_D, l_G} requested from the construction
  /// Largest interpolation residual of the certificate disc.
  double residual = 0.0;
  /// l_G(b, w) = l_G^{#A}(b, w), i.e. lower = upper in the limit slack -> 0.
  bool equality_flag = false;
  Theorem5Certificate certificate;
};

inline constexpr double kEqualityFlagTol = 1e-10;
inline constexpr double kCertificateResidualTol = 1e-9;

/// Lower bound from the one-dimensional Lempert functions; upper bound from
/// the explicit disc of theorem5_certificate with alpha = max{l_D, l_G} +
/// slack, slack = 1e-6 tightened by factors of 10 while the disc still
/// interpolates to 1e-9 (down to 1e-11); slacks with alpha >= 1 are skipped.
/// Throws NumericError if no slack gives an admissible disc.
[[nodiscard]] BoundsReport theorem5_bounds(const PoleSet& A, const PlaneDomain& G, Complex b, Complex z, Complex w);

/// Rotation test for two-point pole sets of the disc at the origin.
struct Theorem7Decision {
  bool rotation = false;
  double theta = 0.0;
  /// True when b_1 = e^{i theta} a_2 (the swapped pairing).
  bool swapped = false;
  double l_A = 0.0;  ///< l(A, 0) = |a_1 a_2|
  double l_B = 0.0;
  /// With a rotation: |a_1 a_2|, realized by zeta -> (zeta, e^{i theta} zeta)
  /// at the nodes a_1, a_2. NaN otherwise.
  double value = 0.0;
  DiscExpr certificate = DiscExpr::identity();
  std::vector<Complex> nodes;
};

inline constexpr double kRotationTol = 1e-12;

/// Requires A, B two-point subsets of the disc avoiding 0 with
/// |a_1 a_2| = |b_1 b_2| to 1e-12.
[[nodiscard]] Theorem7Decision theorem7_decide(const PoleSet& A, const PoleSet& B);

struct LevelSample {
  std::size_t ray = 0;
  Complex w;
  double level_residual = 0.0;  ///< |l(B, w) - l(A, z)|
  bool automorphic = false;     ///< some automorphism maps (z, A) to (w, B)
};

struct Corollary8Report {
  double level = 0.0;  ///< l(A, z)
  /// The points w admitting an automorphism with z -> w, A -> B (at most two).
  std::vector<Complex> automorphic_points;
  std::vector<LevelSample> samples;
};

inline constexpr double kLevelTol = 1e-10;

/// `count` points w with l(B, w) = l(A, z), the i-th found on a ray from b_1
/// in a direction drawn from a generator seeded with seed ^ i; directions
/// without a crossing are redrawn. Samples are ordered by ray index and do
/// not depend on `threads`.
[[nodiscard]] Corollary8Report corollary8_sample(const PoleSet& A, Complex z, const PoleSet& B, std::size_t count,
                                                 std::uint64_t seed, int threads = 1);

/// Extension of a pole pair with a product-property gap by far poles.
struct Prop9Report {
  double q = 0.0;
  double l_D_A = 0.0;
  double l_G_B = 0.0;
  double base_max = 0.0;  ///< max{l_D(A, z), l_G(B, w)}
  double product_value = 0.0;  ///< base_max / q
  double g_D_A1 = 0.0;
  double g_G_B1 = 0.0;
  double green_product = 0.0;
  /// Relative truncation bound on green_product (0 for disc factors).
  double green_tail_bound = 0.0;
  bool condition3 = false;  ///< green_product > q
  /// product_value * green_product, the lower end of the chain.
  double chain_lower = 0.0;
  /// max{l_D(A u A1, z), l_G(B u B1, w)}.
  double extended_max = 0.0;
  bool strict = false;  ///< chain_lower > extended_max
};

/// q in (0, 1) is max{l_D(A, z), l_G(B, w)} divided by the product Lempert
/// value; with an upper bound in the denominator q is underestimated, so
/// `condition3` and `strict` are estimates. A1, B1 must be disjoint from A,
/// B and lie in the same domains.
[[nodiscard]] Prop9Report prop9_extend(const PoleSet& A, const PoleSet& B, Complex z, Complex w, double q,
                                       const PoleSet& A1, const PoleSet& B1);

struct Prop10Settings {
  std::size_t n = 4;
  std::uint64_t seed = 0;
  /// Lifts per point in the literal genericity margin.
  std::size_t lifts = 200;
  int max_retries = 100;
  /// Smallest margin accepted for the minimal-lift ratios.
  double margin = 1e-6;
};

struct Prop10Report {
  std::vector<Complex> poles;
  /// Target values l_D(a_k, z): the k-th smallest lift modulus of b, capped
  /// at 1 - 1e-12 where it is not resolvable.
  std::vector<double> targets;
  std::vector<double> l_D_prefix;  ///< l_D({a_1..a_k}, z)
  std::vector<double> l_G_prefix;  ///< l_G^k(b, w)
  double equality_residual = 0.0;  ///< max_k |l_D_prefix - l_G_prefix|
  /// min |xi_1 / xi_2 - eta / zeta| over `lifts` lifts of a_1, a_2 and b.
  double literal_margin = 0.0;
  /// Same over the minimal lifts of a_j, a_k (j != k) and distinct eta,
  /// zeta among the n smallest lifts of b; the configurations an extremal
  /// disc could use.
  double minimal_margin = 0.0;
  int attempts = 0;
  BoundsReport bounds;
};

inline constexpr double kTargetCap = 1.0 - 1e-12;

/// Poles a_1..a_n in D with l_D({a_1..a_k}, z) = l_G^k(b, w) for every k,
/// on random rays from z (seeded by settings.seed), redrawn until the
/// minimal-lift margin exceeds settings.margin. G must not be simply
/// connected and b != w. Throws NumericError after max_retries.
[[nodiscard]] Prop10Report prop10_construct(const PlaneDomain& D, const PlaneDomain& G, Complex z, Complex w,
                                            Complex b, const Prop10Settings& settings = {});

struct Prop11Report {
  Prop10Report base;  ///< the two-pole instance A_2
  /// Certified upper bound of l_{D x G}(A_2 x {b}, (z, w)): the smaller of
  /// the explicit certificate disc and the node optimizer.
  double product_upper = 0.0;
  double q = 0.0;  ///< l_D(A_2, z) / product_upper
  std::vector<Complex> extra;
  double l_D_extra = 0.0;
  double l_D_A2 = 0.0;
  double l_G2 = 0.0;
  double g_G = 0.0;  ///< g_G(b, w)
  double l_D_union = 0.0;
  /// max{l_D(A_2 u extra, z), g_G(b, w)}.
  double rhs = 0.0;
  /// product_upper * l_D_extra.
  double chain_estimate = 0.0;
  /// l_G^2(b, w) > rhs, computed from one-dimensional quantities only.
  bool rhs_strict = false;
  /// l_D_extra > q + 1e-9.
  bool strict = false;
};

/// Builds A_2 with prop10_construct and adds `extra` (default: one pole with
/// l_D = (1 + q) / 2 on a random ray). Throws DomainError if l_D(extra, z)
/// <= q.
[[nodiscard]] Prop11Report prop11_construct(const PlaneDomain& D, const PlaneDomain& G, Complex z, Complex w,
                                            Complex b, std::optional<std::vector<Complex>> extra = std::nullopt,
                                            const Prop10Settings& settings = {},
                                            const OptimizerSettings& optimizer = {});

}  // namespace lempert
