#include <doctest.h>

#include <cmath>

#include "../oracles/random.hpp"
#include "lempert/covering.hpp"
#include "lempert/disc_domain.hpp"
#include "lempert/errors.hpp"
#include "lempert/node_optimizer.hpp"
#include "lempert/pick.hpp"

using namespace lempert;
using lempert::testing::Sampler;

namespace {
PoleSet disc_poles(std::vector<Complex> pts) { return PoleSet(PlaneDomain::unit_disc(), std::move(pts)); }

OptimizerSettings quick(int restarts) {
  OptimizerSettings s;
  s.restarts = restarts;
  return s;
}

// The returned nodes solve both coordinate problems (0 prepended).
void check_realized(const OptimizerResult& r) {
  PickProblem p1{{0.0}, {0.0}};
  PickProblem p2{{0.0}, {0.0}};
  for (std::size_t i = 0; i < r.best.nodes.size(); ++i) {
    p1.nodes.push_back(r.best.nodes[i]);
    p1.targets.push_back(r.best.first_targets[i]);
    p2.nodes.push_back(r.best.nodes[i]);
    p2.targets.push_back(r.best.second_targets[i]);
  }
  CHECK(pick_feasible(p1).min_eigenvalue >= -1e-12);
  CHECK(pick_feasible(p2).min_eigenvalue >= -1e-12);
  double prod = 1.0;
  for (const auto& n : r.best.nodes) prod *= std::abs(n);
  CHECK(std::abs(prod - r.value) <= 1e-14);
}
}  // namespace

TEST_CASE("settings validation") {
  auto s = quick(0);
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = quick(1);
  s.threads = 0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = quick(1);
  s.max_nodes = 8;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = quick(1);
  s.step_tolerance = 0.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  CHECK_THROWS_AS((void)bidisc_lempert(PoleSet(PlaneDomain::annulus(0.3), {0.5}), disc_poles({0.5}), 0.6, 0.0,
                                       quick(1)),
                  DomainError);
  CHECK_THROWS_AS((void)bidisc_lempert(disc_poles({0.5}), disc_poles({0.5}), 1.0, 0.0, quick(1)), DomainError);
}

TEST_CASE("singletons give the larger coordinate value") {
  Sampler rng(71);
  for (int i = 0; i < 20; ++i) {
    const Complex a = rng.disc_point(0.05, 0.9);
    const Complex b = rng.disc_point(0.05, 0.9);
    const Complex z = rng.disc_point(0.0, 0.6);
    const Complex w = rng.disc_point(0.0, 0.6);
    const auto r = bidisc_lempert(disc_poles({a}), disc_poles({b}), z, w, quick(1));
    const double expect = std::max(std::abs(moebius(a, z)), std::abs(moebius(b, w)));
    CHECK(std::abs(r.value - expect) <= 1e-14);
    CHECK(r.best.nodes.size() == 1);
    check_realized(r);
  }
}

TEST_CASE("rotated pole sets give the product of moduli") {
  const auto A = disc_poles({0.5, Complex(0, 0.5)});
  const auto B = disc_poles({Complex(0, 0.5), -0.5});
  const auto r = bidisc_lempert(A, B, 0.0, 0.0, quick(20));
  CHECK(std::abs(r.value - 0.25) <= 1e-6);
  CHECK(r.value >= 0.25 - 1e-12);
  check_realized(r);
}

TEST_CASE("values respect the coordinate lower bounds") {
  Sampler rng(72);
  for (int i = 0; i < 4; ++i) {
    const auto A = disc_poles({rng.disc_point(0.2, 0.8), rng.disc_point(0.2, 0.8)});
    const auto B = disc_poles({rng.disc_point(0.2, 0.8), rng.disc_point(0.2, 0.8)});
    const Complex z = rng.disc_point(0.0, 0.3);
    const Complex w = rng.disc_point(0.0, 0.3);
    const auto r = bidisc_lempert(A, B, z, w, quick(4));
    const double floor = std::max(lempert_disc(A, z).value, lempert_disc(B, w).value);
    CHECK(r.value >= floor - 1e-12);
    check_realized(r);
  }
}

TEST_CASE("adding poles never increases the value") {
  const auto A1 = disc_poles({0.5});
  const auto A2 = disc_poles({0.5, Complex(0, 0.5)});
  const auto B = disc_poles({0.5, -0.5});
  const auto small = bidisc_lempert(A1, B, 0.0, 0.0, quick(10));
  const auto large = bidisc_lempert(A2, B, 0.0, 0.0, quick(10));
  CHECK(large.value <= small.value + 1e-9);
}

TEST_CASE("lowering the degree cap never decreases the value") {
  const auto A = disc_poles({0.5, Complex(0, 0.5)});
  const auto B = disc_poles({0.5, -0.5});
  double previous = 0.0;
  for (std::size_t cap = 4; cap >= 1; --cap) {
    auto s = quick(6);
    s.max_nodes = cap;
    const auto r = bidisc_lempert(A, B, 0.0, 0.0, s);
    CHECK(r.value >= previous);
    previous = r.value;
  }
  CHECK(previous == doctest::Approx(0.5));
}

TEST_CASE("results do not depend on the thread count") {
  const auto A = disc_poles({0.5, Complex(0, 0.5)});
  const auto B = disc_poles({0.5, -0.5});
  auto s = quick(8);
  const auto one = bidisc_lempert(A, B, 0.0, 0.0, s);
  s.threads = 3;
  const auto three = bidisc_lempert(A, B, 0.0, 0.0, s);
  CHECK(one.value == three.value);
  CHECK(one.best.nodes == three.best.nodes);
  s.seed = 5;
  const auto other = bidisc_lempert(A, B, 0.0, 0.0, s);
  CHECK(other.value > 0.25);
}

TEST_CASE("mixed products stay above the coordinate bounds") {
  const auto D = PlaneDomain::annulus(0.3);
  const auto A = PoleSet(D, {Complex(0.6, 0.1), Complex(-0.5, 0.3)});
  const auto B = disc_poles({0.4});
  const Complex z(0.55, 0.0);
  const Complex w(0.1, 0.0);
  const auto r = mixed_product_upper(A, B, z, w, quick(4));
  const double floor = std::max(lempert_poleset_plane(A, z).value, std::abs(moebius(0.4, w)));
  CHECK(r.value >= floor - 1e-12);
  check_realized(r);
}
