#include <doctest.h>

#include <cmath>
#include <numeric>

#include "../oracles/random.hpp"
#include "lempert/errors.hpp"
#include "lempert/pick.hpp"

using namespace lempert;
using lempert::testing::Sampler;

namespace {

SmallHermitian random_hermitian(Sampler& s, std::size_t n) {
  SmallHermitian m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = s.uniform(-2, 2);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = Complex(s.uniform(-1, 1), s.uniform(-1, 1));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

// Determinant by Gaussian elimination with partial pivoting.
Complex determinant(const SmallHermitian& m) {
  const std::size_t n = m.dim();
  std::vector<Complex> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  Complex det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[c * n + j], a[piv * n + j]);
      det = -det;
    }
    det *= a[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Complex f = a[r * n + c] / a[c * n + c];
      for (std::size_t j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
    }
  }
  return det;
}

}  // namespace

TEST_CASE("jacobi eigenvalues preserve trace, frobenius norm and determinant") {
  Sampler s(11);
  for (std::size_t n = 1; n <= SmallHermitian::kMaxDim; ++n) {
    for (int rep = 0; rep < 40; ++rep) {
      const auto m = random_hermitian(s, n);
      const auto eig = hermitian_eigenvalues(m);
      REQUIRE(eig.size() == n);
      CHECK(std::is_sorted(eig.begin(), eig.end()));
      double trace = 0.0, frob = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        trace += m(i, i).real();
        for (std::size_t j = 0; j < n; ++j) frob += std::norm(m(i, j));
      }
      const double sum = std::accumulate(eig.begin(), eig.end(), 0.0);
      double sum2 = 0.0, prod = 1.0;
      for (double e : eig) {
        sum2 += e * e;
        prod *= e;
      }
      CHECK(sum == doctest::Approx(trace).epsilon(1e-12));
      CHECK(sum2 == doctest::Approx(frob).epsilon(1e-12));
      CHECK(std::abs(prod - determinant(m).real()) <= 1e-11 * std::max(1.0, std::abs(prod)));
      CHECK(hermitian_min_eigenvalue(m) == doctest::Approx(eig.front()).epsilon(1e-12));
    }
  }
}

TEST_CASE("jacobi handles diagonal and degenerate input") {
  SmallHermitian m(3);
  m(0, 0) = 3.0;
  m(1, 1) = -1.0;
  m(2, 2) = 2.0;
  const auto eig = hermitian_eigenvalues(m);
  CHECK(eig == std::vector<double>{-1.0, 2.0, 3.0});
  SmallHermitian ones(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) ones(i, j) = 1.0;
  const auto e1 = hermitian_eigenvalues(ones);
  CHECK(std::abs(e1.front()) < 1e-14);
  CHECK(e1.back() == doctest::Approx(4.0));
  CHECK_THROWS_AS(SmallHermitian(9), DomainError);
}

TEST_CASE("pick feasibility examples") {
  const auto identity = pick_feasible({{0.0}, {0.0}});
  CHECK(identity.feasible);
  CHECK(identity.min_eigenvalue == doctest::Approx(1.0));

  CHECK(pick_feasible({{0.0, Complex(0.5, 0.1)}, {0.0, Complex(0.3, -0.2)}}).feasible);
  const auto bad = pick_feasible({{0.0, 0.5}, {0.0, 0.9}});
  CHECK_FALSE(bad.feasible);
  CHECK(bad.min_eigenvalue < 0.0);

  CHECK_THROWS_WITH_AS(pick_feasible({{0.0, 0.3, 0.3}, {0.0, 0.1, 0.2}}), "coincident nodes", DomainError);
  CHECK_THROWS_AS(pick_feasible({{0.0, 0.3}, {0.0}}), DomainError);
}

TEST_CASE("pick feasibility agrees with the Schwarz lemma for two points") {
  Sampler s(12);
  for (int i = 0; i < 500; ++i) {
    const Complex lambda = s.disc_point(0.05, 0.95);
    const Complex w = s.disc_point(0.0, 0.95);
    const bool expected = std::abs(w) <= std::abs(lambda);
    if (std::abs(std::abs(w) - std::abs(lambda)) < 1e-9) continue;
    CHECK(pick_feasible({{0.0, lambda}, {0.0, w}}).feasible == expected);
  }
}

TEST_CASE("pick minimum eigenvalue is invariant under a common rotation") {
  Sampler s(13);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = static_cast<std::size_t>(s.integer(2, 6));
    PickProblem p;
    p.nodes.push_back(0.0);
    p.targets.push_back(0.0);
    for (std::size_t k = 1; k < n; ++k) {
      p.nodes.push_back(s.disc_point(0.1, 0.95));
      p.targets.push_back(s.disc_point(0.0, 0.95));
    }
    const Complex node_turn = s.unit();
    const Complex target_turn = s.unit();
    PickProblem q = p;
    for (auto& z : q.nodes) z *= node_turn;
    for (auto& w : q.targets) w *= target_turn;
    CHECK(std::abs(pick_feasible(p).min_eigenvalue - pick_feasible(q).min_eigenvalue) < 1e-12);
  }
}

TEST_CASE("origin-pinned Schur complement has the same sign pattern as the full Pick matrix") {
  Sampler s(14);
  int agree = 0, total = 0;
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = static_cast<std::size_t>(s.integer(1, 4));
    std::vector<Complex> nodes, targets;
    for (std::size_t k = 0; k < n; ++k) {
      nodes.push_back(s.disc_point(0.1, 0.95));
      targets.push_back(s.disc_point(0.0, 0.9));
    }
    PickProblem full{{0.0}, {0.0}};
    full.nodes.insert(full.nodes.end(), nodes.begin(), nodes.end());
    full.targets.insert(full.targets.end(), targets.begin(), targets.end());
    const double lf = pick_feasible(full).min_eigenvalue;
    const double lr = origin_pinned_min_eigenvalue(nodes, targets);
    if (std::abs(lf) < 1e-9 || std::abs(lr) < 1e-9) continue;
    ++total;
    agree += (lf >= 0.0) == (lr >= 0.0);
  }
  CHECK(total > 1000);
  CHECK(agree == total);
}
