#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lempert/complex_kernel.hpp"
#include "lempert/disc_domain.hpp"

namespace lempert {

struct OptimizerSettings {
  int restarts = 200;
  std::uint64_t seed = 0;
  /// Simplex iterations per restart.
  int max_iterations = 2000;
  /// A restart stops once the simplex is smaller than this in every coordinate.
  double step_tolerance = 1e-9;
  /// Worker threads; results do not depend on it.
  int threads = 1;
  /// Largest subset of pole pairs optimized (= Blaschke degree cap per coordinate).
  std::size_t max_nodes = 4;
  /// Lifts tried per pole for plane-domain coordinates (1 for the disc).
  std::size_t lift_choices = 2;

  void validate() const;
};

/// Subset of pole pairs with one node each; value = prod |nodes|.
struct NodeConfig {
  std::vector<std::pair<std::size_t, std::size_t>> subset;  ///< (index in A, index in B)
  std::vector<Complex> nodes;
  /// Interpolation targets after moving the base point to the origin: disc
  /// automorphism images for the unit disc, cover lifts otherwise.
  std::vector<Complex> first_targets;
  std::vector<Complex> second_targets;
  double value = 1.0;
};

struct OptimizerResult {
  NodeConfig best;
  double value = 1.0;
  /// Pick matrix minimum eigenvalues of the verified best configuration.
  double first_min_eigenvalue = 0.0;
  double second_min_eigenvalue = 0.0;
  std::size_t problems = 0;        ///< (subset, lift choice) pairs enumerated
  std::size_t pruned = 0;          ///< problems skipped by the disc lower bound
  std::size_t infeasible_runs = 0; ///< restarts that found no feasible start
  std::size_t best_restart = 0;
};

/// Upper bound for l_{D x G}(A x B, (z, w)) over the family
/// (pi_z o B1, pi_w o B2) with B1(0) = B2(0) = 0: for every nonempty subset S
/// of A x B (at most max_nodes pairs) minimizes prod |lambda| such that both
/// coordinate Pick problems {0 -> 0, lambda_s -> lift of the s-th pole} are
/// feasible. On the unit disc the lift is the automorphism image, so the
/// family is complete and the bound is the Lempert function itself up to
/// optimization error.
///
/// Node shapes are searched by random restarts of a Nelder-Mead simplex in
/// log-polar coordinates (rotation and scale removed); each shape is scaled
/// to the exact feasibility boundary by bisection, which is valid because
/// lambda -> s lambda, s > 1, preserves feasibility. The winner is
/// re-verified with pick_feasible. Deterministic for a given seed.
[[nodiscard]] OptimizerResult mixed_product_upper(const PoleSet& A, const PoleSet& B, Complex z, Complex w,
                                                  const OptimizerSettings& settings);

/// mixed_product_upper for A, B in the unit disc.
[[nodiscard]] OptimizerResult bidisc_lempert(const PoleSet& A, const PoleSet& B, Complex z, Complex w,
                                             const OptimizerSettings& settings);

}  // namespace lempert
