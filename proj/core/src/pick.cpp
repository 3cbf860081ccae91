#include "lempert/pick.hpp"

#include <algorithm>
#include <cmath>

#include "lempert/errors.hpp"

namespace lempert {

SmallHermitian::SmallHermitian(std::size_t dim) : dim_(dim) {
  if (dim == 0 || dim > kMaxDim) throw DomainError("Hermitian matrix dimension must be in [1, 8]");
}

std::vector<double> hermitian_eigenvalues(SmallHermitian m, double tol) {
  const std::size_t n = m.dim();
  double total = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) total += std::norm(m(r, c));
  }
  const double threshold = tol * tol * std::max(total, 1e-300);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = r + 1; c < n; ++c) off += 2.0 * std::norm(m(r, c));
    }
    if (off <= threshold) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = m(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        // Unitary U = diag(1, e^{-i phi}) * [[c, s], [-s, c]] zeroes entry (p,q).
        const Complex phase = apq / g;  // e^{i phi}
        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        const double theta = 0.5 * (aqq - app) / g;
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex u_pp = c;
        const Complex u_pq = s;
        const Complex u_qp = -s * std::conj(phase);
        const Complex u_qq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {  // A <- A U
          const Complex akp = m(k, p);
          const Complex akq = m(k, q);
          m(k, p) = akp * u_pp + akq * u_qp;
          m(k, q) = akp * u_pq + akq * u_qq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- U^H A
          const Complex apk = m(p, k);
          const Complex aqk = m(q, k);
          m(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
          m(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
        }
        m(p, q) = 0.0;
        m(q, p) = 0.0;
        m(p, p) = m(p, p).real();
        m(q, q) = m(q, q).real();
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = m(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

double hermitian_min_eigenvalue(const SmallHermitian& m, double tol) {
  if (m.dim() == 1) return m(0, 0).real();
  if (m.dim() == 2) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double half_gap = 0.5 * (a - d);
    return 0.5 * (a + d) - std::hypot(half_gap, std::abs(m(0, 1)));
  }
  return hermitian_eigenvalues(m, tol).front();
}

SmallHermitian pick_matrix(const PickProblem& p) {
  if (p.nodes.size() != p.targets.size()) throw DomainError("Pick problem needs one target per node");
  if (p.nodes.empty()) throw DomainError("Pick problem needs at least one node");
  for (const auto& z : p.nodes) (void)DiscPoint(z);
  for (const auto& w : p.targets) (void)DiscPoint(w);
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < p.nodes.size(); ++j) {
      if (std::abs(p.nodes[i] - p.nodes[j]) <= 1e-14) throw DomainError("coincident nodes");
    }
  }
  const std::size_t n = p.nodes.size();
  SmallHermitian m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = (1.0 - p.targets[i] * std::conj(p.targets[j])) /
                (1.0 - p.nodes[i] * std::conj(p.nodes[j]));
    }
    m(i, i) = m(i, i).real();
  }
  return m;
}

PickVerdict pick_feasible(const PickProblem& p) {
  const double lambda = hermitian_min_eigenvalue(pick_matrix(p));
  return {lambda >= -kPickFeasibilityTol, lambda};
}

double origin_pinned_min_eigenvalue(std::span<const Complex> nodes, std::span<const Complex> targets) {
  const std::size_t n = nodes.size();
  SmallHermitian m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Complex ll = nodes[i] * std::conj(nodes[j]);
      const Complex v = (ll - targets[i] * std::conj(targets[j])) / (1.0 - ll);
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
    m(i, i) = m(i, i).real();
  }
  return hermitian_min_eigenvalue(m);
}

bool origin_pinned_feasible(std::span<const Complex> nodes, std::span<const Complex> targets, double tol) {
  const std::size_t n = nodes.size();
  std::array<Complex, SmallHermitian::kMaxDim * SmallHermitian::kMaxDim> l{};
  auto at = [&](std::size_t r, std::size_t c) -> Complex& { return l[r * SmallHermitian::kMaxDim + c]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const Complex ll = nodes[i] * std::conj(nodes[j]);
      at(i, j) = (ll - targets[i] * std::conj(targets[j])) / (1.0 - ll);
    }
    at(i, i) = at(i, i).real() + tol;
  }
  // In-place lower Cholesky factor.
  for (std::size_t j = 0; j < n; ++j) {
    double d = at(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(at(j, k));
    if (!(d > 0.0)) return false;
    const double root = std::sqrt(d);
    at(j, j) = root;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex v = at(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= at(i, k) * std::conj(at(j, k));
      at(i, j) = v / root;
    }
  }
  return true;
}

}  // namespace lempert
