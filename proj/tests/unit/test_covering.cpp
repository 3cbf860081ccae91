#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "../oracles/annulus_green_series.hpp"
#include "../oracles/random.hpp"
#include "lempert/covering.hpp"
#include "lempert/disc_expr.hpp"
#include "lempert/errors.hpp"

using namespace lempert;
using lempert::testing::Sampler;

namespace {

Complex annulus_point(Sampler& s, double R) {
  const double lr = s.uniform(std::log(R) * 0.97, std::log(0.97));
  return std::polar(std::exp(lr), s.uniform(-kPi, kPi));
}

Complex domain_point(Sampler& s, const PlaneDomain& d) {
  switch (d.kind()) {
    case DomainKind::UnitDisc: return s.disc_point(0.0, 0.95);
    case DomainKind::PuncturedDisc: return s.disc_point(0.02, 0.95);
    case DomainKind::Annulus: return annulus_point(s, d.inner_radius());
  }
  return 0.0;
}

const std::vector<PlaneDomain>& all_domains() {
  static const std::vector<PlaneDomain> d{PlaneDomain::unit_disc(), PlaneDomain::punctured_disc(),
                                          PlaneDomain::annulus(0.1), PlaneDomain::annulus(0.3),
                                          PlaneDomain::annulus(0.6)};
  return d;
}

}  // namespace

TEST_CASE("plane domain parsing and membership") {
  CHECK(PlaneDomain::parse("disc") == PlaneDomain::unit_disc());
  CHECK(PlaneDomain::parse("punctured") == PlaneDomain::punctured_disc());
  CHECK(PlaneDomain::parse("annulus:0.3") == PlaneDomain::annulus(0.3));
  CHECK(PlaneDomain::parse(PlaneDomain::annulus(0.123456789).name()) == PlaneDomain::annulus(0.123456789));
  CHECK_THROWS_AS(PlaneDomain::parse("annulus:1.5"), DomainError);
  CHECK_THROWS_AS(PlaneDomain::parse("square"), DomainError);
  CHECK_THROWS_AS(PlaneDomain::annulus(1e-7), DomainError);
  const auto ann = PlaneDomain::annulus(0.5);
  CHECK(ann.contains(0.7));
  CHECK_FALSE(ann.contains(0.5));
  CHECK_FALSE(ann.contains(0.3));
  CHECK_FALSE(ann.contains(1.0));
  CHECK_FALSE(PlaneDomain::punctured_disc().contains(0.0));
}

TEST_CASE("raw covers at the origin") {
  for (double R : {0.1, 0.3, 0.6}) {
    const CoverMap c(PlaneDomain::annulus(R), 0.5 * (1.0 + R));
    CHECK(std::abs(c.raw(0.0) - std::sqrt(R)) < 1e-15);
  }
  const CoverMap p(PlaneDomain::punctured_disc(), 0.5);
  CHECK(std::abs(p.raw(0.0) - std::exp(-1.0)) < 1e-15);
  CHECK_THROWS_AS((void)build_cover(PlaneDomain::annulus(0.5), 0.2), DomainError);
}

TEST_CASE("normalized cover maps 0 to the base point and lands in the domain") {
  Sampler s(31);
  for (const auto& d : all_domains()) {
    for (int i = 0; i < 100; ++i) {
      const Complex z = domain_point(s, d);
      const auto c = build_cover(d, z);
      CHECK(std::abs(c(0.0) - z) < 1e-12);
      for (int k = 0; k < 10; ++k) {
        const Complex zeta = s.disc_point(0.0, 0.999);
        // Images may come arbitrarily close to the puncture, so membership
        // is tested without the interior margin.
        const double r = std::abs(c(zeta));
        CHECK(r < 1.0);
        if (d.kind() == DomainKind::Annulus) CHECK(r > d.inner_radius());
        if (d.kind() == DomainKind::PuncturedDisc) CHECK(r > 0.0);
      }
    }
  }
}

TEST_CASE("covering identity and ascending lifts") {
  Sampler s(32);
  for (const auto& d : all_domains()) {
    for (int i = 0; i < 60; ++i) {
      const Complex z = domain_point(s, d);
      const Complex a = domain_point(s, d);
      const auto c = build_cover(d, z);
      const auto lifts = c.smallest_lifts(a, 30);
      REQUIRE(!lifts.empty());
      for (std::size_t k = 0; k < lifts.size(); ++k) {
        // The cover's derivative grows like 1 / defect near the circle.
        if (lifts[k].defect > 1e-3) CHECK(std::abs(c(lifts[k].node) - a) < 1e-11);
        if (k > 0) CHECK(lifts[k].log_modulus >= lifts[k - 1].log_modulus);
        CHECK(lifts[k].defect == doctest::Approx(1.0 - std::norm(lifts[k].node)).epsilon(1e-6));
      }
      CHECK(lifts.front().modulus() == doctest::Approx(c.minimal_lift(a).modulus()));
    }
  }
}

TEST_CASE("the lift of the base point is the origin") {
  Sampler s(33);
  for (const auto& d : all_domains()) {
    const Complex z = domain_point(s, d);
    const auto m = preimage_moduli(build_cover(d, z), z, 5);
    CHECK(m.front() < 1e-12);
  }
}

TEST_CASE("preimage moduli are deck invariant") {
  Sampler s(34);
  for (const auto& d : all_domains()) {
    if (d.simply_connected()) continue;
    for (int i = 0; i < 30; ++i) {
      const Complex z = domain_point(s, d);
      const Complex a = domain_point(s, d);
      const CoverMap c0(d, z);
      const CoverMap c1(d, z, s.integer(-3, 3));
      const auto m0 = preimage_moduli(c0, a, 25);
      const auto m1 = preimage_moduli(c1, a, 25);
      REQUIRE(m0.size() == m1.size());
      for (std::size_t k = 0; k < m0.size(); ++k) CHECK(std::abs(m0[k] - m1[k]) < 1e-10);
      CHECK(std::abs(c1(0.0) - z) < 1e-12);
    }
  }
}

TEST_CASE("annulus preimage defects decay exponentially at the strip rate") {
  // Consecutive windings are 2 pi^2 / L apart in the strip, and the defect of
  // a point at horizontal distance X behaves like 4 cos y cos y0 e^{-X}.
  for (double R : {0.1, 0.3, 0.6}) {
    const auto d = PlaneDomain::annulus(R);
    const double L = -std::log(R);
    const double rate = 2.0 * kPi * kPi / L;
    const auto c = build_cover(d, Complex(0.5 * (1 + R), 0.1));
    const Complex a(-0.4 * (1 + R), 0.2);
    for (int k = 4; k < 8; ++k) {
      const double r = std::log(c.lift(a, k + 1).defect / c.lift(a, k).defect);
      CHECK(r == doctest::Approx(-rate).epsilon(1e-6));
    }
  }
}

TEST_CASE("punctured disc lifts satisfy the half-plane distance formula") {
  Sampler s(35);
  const auto d = PlaneDomain::punctured_disc();
  for (int i = 0; i < 50; ++i) {
    const Complex z = domain_point(s, d);
    const Complex a = domain_point(s, d);
    const auto c = build_cover(d, z);
    const Complex t0(std::log(std::abs(z)), std::arg(z));
    for (int k = -5; k <= 5; ++k) {
      // Pseudo-hyperbolic distance in the left half-plane.
      const Complex t(std::log(std::abs(a)), std::arg(a) + 2 * kPi * k);
      double best = 1e300;
      for (int j = -2; j <= 2; ++j) {
        const Complex tt(t.real(), t.imag() + 2 * kPi * j);
        best = std::min(best, std::abs(tt - t0) / std::abs(tt + std::conj(t0)));
      }
      (void)best;
    }
    const auto m = preimage_moduli(c, a, 11);
    std::vector<double> expect;
    for (int k = -40; k <= 40; ++k) {
      const Complex t(std::log(std::abs(a)), std::arg(a) + 2 * kPi * k);
      expect.push_back(std::abs(t - t0) / std::abs(t + std::conj(t0)));
    }
    std::sort(expect.begin(), expect.end());
    for (std::size_t k = 0; k < m.size(); ++k) CHECK(m[k] == doctest::Approx(expect[k]).epsilon(1e-12));
  }
}

TEST_CASE("plane lempert N values") {
  Sampler s(36);
  for (const auto& d : all_domains()) {
    for (int i = 0; i < 40; ++i) {
      const Complex z = domain_point(s, d);
      const Complex a = domain_point(s, d);
      if (std::abs(a - z) < 1e-6) continue;
      double prev = 2.0;
      for (int n = 1; n <= 10; ++n) {
        const auto r = lempert_N_plane(d, a, z, n);
        if (d.simply_connected()) {
          CHECK(r.value == doctest::Approx(pseudo_distance(a, z)).epsilon(1e-14));
        } else {
          // Decrements fall below double resolution once lifts crowd the circle.
          CHECK(r.value <= prev);
          if (prev - r.value < 1e-12) CHECK(1.0 - std::abs(r.nodes.back()) < 1e-10);
          CHECK(r.value >= pseudo_distance(a, z) * (1 - 1e-12));
        }
        prev = r.value;
        double prod = 1.0;
        for (auto node : r.nodes) {
          prod *= std::abs(node);
          if (1.0 - std::abs(node) > 1e-6) CHECK(std::abs(r.certificate.scalar(node) - a) < 1e-10);
        }
        CHECK(prod == doctest::Approx(r.value).epsilon(1e-12));
        CHECK(std::abs(r.certificate.scalar(0.0) - z) < 1e-12);
      }
    }
  }
  const auto deg = lempert_N_plane(PlaneDomain::annulus(0.3), 0.6, 0.6, 3);
  CHECK(deg.value == 0.0);
  CHECK(deg.nodes.front() == Complex(0.0));
  CHECK_THROWS_AS((void)lempert_N_plane(PlaneDomain::annulus(0.3), 0.6, 0.5, 0), DomainError);
  CHECK_THROWS_AS((void)lempert_N_plane(PlaneDomain::annulus(0.3), 0.6, 0.5, 1001), DomainError);
}

TEST_CASE("plane lempert for pole sets") {
  Sampler s(37);
  for (const auto& d : all_domains()) {
    for (int i = 0; i < 40; ++i) {
      const Complex z = domain_point(s, d);
      std::vector<Complex> pts{domain_point(s, d), domain_point(s, d)};
      const PoleSet A(d, {pts[0]});
      const PoleSet A2(d, pts);
      const auto r1 = lempert_poleset_plane(A, z);
      const auto r2 = lempert_poleset_plane(A2, z);
      CHECK(r1.value == doctest::Approx(lempert_N_plane(d, pts[0], z, 1).value).epsilon(1e-14));
      CHECK(r2.value <= r1.value);
      CHECK(r2.value >= pseudo_distance(pts[0], z) * pseudo_distance(pts[1], z) * (1 - 1e-12));
      for (std::size_t k = 0; k < 2; ++k) {
        INFO(d.name(), " z=", z, " a=", pts[k], " node=", r2.nodes[k], " 1-|node|=", 1.0 - std::abs(r2.nodes[k]));
        // Rounding the node costs about eps / (1 - |node|) in the image.
        const double tol = std::max(1e-10, 1e-15 / (1.0 - std::abs(r2.nodes[k])));
        CHECK(std::abs(r2.certificate.scalar(r2.nodes[k]) - pts[k]) < tol);
      }
    }
  }
}

TEST_CASE("punctured disc green function is the disc green function") {
  Sampler s(38);
  const auto d = PlaneDomain::punctured_disc();
  for (int i = 0; i < 100; ++i) {
    const Complex z = domain_point(s, d);
    const Complex a = domain_point(s, d);
    const auto g = green_plane(d, a, z, 1e-10);
    CHECK(g.tail_bound <= 1e-10);
    CHECK(std::abs(g.value - pseudo_distance(a, z)) <= 1e-8);
    CHECK(std::abs(g.value / pseudo_distance(a, z) - 1.0) <= g.tail_bound + 1e-13);
    CHECK(g.value <= lempert_single(d, a, z));
  }
}

TEST_CASE("annulus green function matches the image series") {
  Sampler s(39);
  for (double R : {0.1, 0.3, 0.6}) {
    const auto d = PlaneDomain::annulus(R);
    for (int i = 0; i < 30; ++i) {
      const Complex z = domain_point(s, d);
      const Complex a = domain_point(s, d);
      const auto g = green_plane(d, a, z);
      const double oracle = lempert::testing::annulus_green_series(R, a, z);
      CHECK(std::abs(g.value / oracle - 1.0) < 1e-9);
      CHECK(g.value <= lempert_single(d, a, z));
      const double l10 = lempert_N_plane(d, a, z, 10).value;
      INFO("R=", R, " z=", z, " a=", a, " l10=", l10, " g=", g.value, " tail=", g.tail_bound);
      // The two products round independently; allow a few ulps.
      constexpr double kRound = 1e-14;
      CHECK(l10 * (1 + kRound) >= g.value);
      CHECK(g.value * (1 + kRound) >= l10 * (1.0 - product_tail_bound(d, a, z, 10)));
    }
  }
}

TEST_CASE("pole placement by value") {
  Sampler s(40);
  // Disc: invert |moebius(a, z)| = t along the ray a = z + r u in closed form.
  for (int i = 0; i < 100; ++i) {
    const Complex z = s.disc_point(0.0, 0.8);
    const Complex u = s.unit();
    const double t = s.uniform(0.01, 0.99);
    const Complex a = find_pole_with_value(PlaneDomain::unit_disc(), z, t, u);
    // |r| / |1 - conj(z)(z + r u)| = t  =>  r^2 = t^2 |c - r conj(z) u|^2,
    // c = 1 - |z|^2; quadratic in r.
    const double c = 1.0 - std::norm(z);
    const Complex v = std::conj(z) * u;
    const double qa = 1.0 - t * t * std::norm(v);
    const double qb = 2.0 * t * t * c * v.real();
    const double qc = -t * t * c * c;
    const double r = (-qb + std::sqrt(qb * qb - 4 * qa * qc)) / (2 * qa);
    CHECK(std::abs(a - (z + r * u)) < 1e-10);
  }
  for (const auto& d : all_domains()) {
    const Complex z = domain_point(s, d);
    const double exit = ray_exit_distance(d, z, std::polar(1.0, 0.3));
    CHECK(exit > 0.0);
    const Complex a1 = find_pole_with_value(d, z, 0.4, std::polar(1.0, 0.3));
    const Complex a2 = find_pole_with_value(d, z, 0.4, std::polar(1.0, 2.0));
    CHECK(std::abs(lempert_single(d, a1, z) - 0.4) < 1e-10);
    CHECK(std::abs(lempert_single(d, a2, z) - 0.4) < 1e-10);
    CHECK(std::abs(a1 - a2) > 1e-3);
    const Complex tiny = find_pole_with_value(d, z, 1e-6, std::polar(1.0, 0.3));
    CHECK(std::abs(tiny - z) < 1e-4);
  }
}

TEST_CASE("disc expressions") {
  const auto c = build_cover(PlaneDomain::annulus(0.4), 0.7);
  const auto e = DiscExpr::pair(DiscExpr::compose(DiscExpr::cover(c), DiscExpr::rotation(0.5)),
                                DiscExpr::compose(DiscExpr::moebius(0.3), DiscExpr::scale(0.5)));
  CHECK(e.arity() == 2);
  const auto v = e(0.2);
  CHECK(std::abs(v[0] - c(std::polar(0.2, 0.5))) < 1e-15);
  CHECK(std::abs(v[1] - moebius(0.3, 0.1)) < 1e-15);
  CHECK_THROWS_AS((void)DiscExpr::compose(DiscExpr::identity(), e), DomainError);
  CHECK_THROWS_AS((void)e.scalar(0.1), DomainError);
  CHECK(!e.describe().empty());
}
