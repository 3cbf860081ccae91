#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "lempert/complex_kernel.hpp"

namespace lempert {

/// Dense Hermitian matrix of dimension at most kMaxDim, stored inline so the
/// optimizer's inner loop never allocates.
class SmallHermitian {
 public:
  static constexpr std::size_t kMaxDim = 8;

  explicit SmallHermitian(std::size_t dim);

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * kMaxDim + c]; }
  [[nodiscard]] Complex operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * kMaxDim + c];
  }

 private:
  std::size_t dim_;
  std::array<Complex, kMaxDim * kMaxDim> data_{};
};

/// Eigenvalues (ascending) by cyclic complex Jacobi rotations; iteration
/// stops once the off-diagonal Frobenius norm is below tol times the
/// matrix norm.
[[nodiscard]] std::vector<double> hermitian_eigenvalues(SmallHermitian m, double tol = 1e-13);

[[nodiscard]] double hermitian_min_eigenvalue(const SmallHermitian& m, double tol = 1e-13);

/// Interpolation data for a holomorphic self-map of the disc: nodes[i] -> targets[i].
struct PickProblem {
  std::vector<Complex> nodes;
  std::vector<Complex> targets;
};

struct PickVerdict {
  bool feasible = false;
  double min_eigenvalue = 0.0;
};

inline constexpr double kPickFeasibilityTol = 1e-12;

/// [(1 - w_i conj(w_j)) / (1 - l_i conj(l_j))]. Validates the problem.
[[nodiscard]] SmallHermitian pick_matrix(const PickProblem& p);

/// Feasible iff the Pick matrix has minimum eigenvalue >= -1e-12. Throws
/// DomainError("coincident nodes") for repeated nodes.
[[nodiscard]] PickVerdict pick_feasible(const PickProblem& p);

/// Minimum eigenvalue of the Schur complement of the Pick matrix of
/// {0 -> 0} u {nodes[i] -> targets[i]} with respect to the 0 row:
/// [(l_i conj(l_j) - w_i conj(w_j)) / (1 - l_i conj(l_j))]. It is PSD exactly
/// when the full problem is. No validation; used in optimizer inner loops.
[[nodiscard]] double origin_pinned_min_eigenvalue(std::span<const Complex> nodes,
                                                  std::span<const Complex> targets);

/// True when the origin-pinned Schur complement plus tol * I admits a
/// Cholesky factorization, i.e. its minimum eigenvalue exceeds -tol. Much
/// cheaper than an eigenvalue computation; no validation.
[[nodiscard]] bool origin_pinned_feasible(std::span<const Complex> nodes, std::span<const Complex> targets,
                                          double tol = kPickFeasibilityTol);

}  // namespace lempert
