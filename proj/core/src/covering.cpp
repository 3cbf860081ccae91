#include "lempert/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lempert/errors.hpp"

namespace lempert {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// -log|eta| over all preimages of a: explicit terms plus an estimate of the
// remainder with a certified half-width.
struct LogSeries {
  std::vector<double> terms;  // -log|eta|, one per explicit preimage
  double tail_estimate = 0.0;
  double tail_halfwidth = 0.0;

  [[nodiscard]] double explicit_sum() const {
    double s = 0.0;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) s += *it;
    return s;
  }
  [[nodiscard]] bool hit() const {
    return std::any_of(terms.begin(), terms.end(), [](double t) { return t == kInf; });
  }
};

// Bound on sum_{j>=0} -log rho over strip preimages at distances X + j P.
double annulus_side_bound(double gap, double period) {
  const double e = std::exp(-gap);
  const double one_minus = -std::expm1(-gap);
  const double eps_max = 4.0 * e / (one_minus * one_minus);
  if (!(eps_max <= 0.5)) return kInf;
  return eps_max / -std::expm1(-period);
}

struct HalfPlaneTail {
  double estimate;
  double halfwidth;
};

// sum_{m>=0} f(T + 2 pi m), f(t) = 1/2 log((beta^2+t^2)/(alpha^2+t^2)), f
// convex and decreasing on [T, inf).
HalfPlaneTail half_plane_side(double big_t, double alpha, double beta) {
  const double a2 = alpha * alpha;
  const double b2 = beta * beta;
  const double t2 = big_t * big_t;
  const double integral =
      0.5 * (2.0 * beta * std::atan(beta / big_t) - 2.0 * alpha * std::atan2(alpha, big_t) -
             big_t * std::log1p((b2 - a2) / (t2 + a2))) /
      (2.0 * kPi);
  const double f = 0.5 * std::log1p((b2 - a2) / (t2 + a2));
  const double slope = 2.0 * kPi * big_t * (b2 - a2) / ((b2 + t2) * (a2 + t2));
  return {integral + 0.5 * f + slope / 16.0, slope / 16.0};
}

LogSeries log_series(const CoverMap& cover, Complex a, double tol_rel, std::size_t min_window) {
  LogSeries out;
  const DomainKind kind = cover.domain().kind();
  if (kind == DomainKind::UnitDisc) {
    out.terms.push_back(-cover.lift(a, 0).log_modulus);
    return out;
  }
  const int center = cover.nearest_winding(a);
  const Complex t0 = cover.base_parameter();
  const double period = cover.winding_period();

  if (kind == DomainKind::Annulus) {
    for (int k = std::max<int>(2, static_cast<int>(min_window));; k *= 2) {
      if (2 * static_cast<std::size_t>(k) + 1 > kMaxGreenLifts) {
        throw NumericError("green_plane: tail tolerance not reachable within 10^4 preimages");
      }
      const double gap_plus = std::abs(cover.parameter(a, center + k + 1).real() - t0.real());
      const double gap_minus = std::abs(cover.parameter(a, center - k - 1).real() - t0.real());
      const double bound = annulus_side_bound(gap_plus, period) + annulus_side_bound(gap_minus, period);
      if (std::expm1(0.5 * bound) > tol_rel) continue;
      out.terms.clear();
      for (int m = -k; m <= k; ++m) out.terms.push_back(-cover.lift(a, center + m).log_modulus);
      out.tail_estimate = 0.5 * bound;
      out.tail_halfwidth = 0.5 * bound;
      return out;
    }
  }

  // Punctured disc, half-plane coordinates t = u + iv.
  const Complex ta = cover.parameter(a, center);
  const double alpha = std::abs(ta.real() - t0.real());
  const double beta = std::abs(ta.real() + t0.real());
  for (int k = std::max<int>(64, static_cast<int>(min_window) + 1);; k *= 2) {
    if (2 * static_cast<std::size_t>(k) - 1 > kMaxGreenLifts) {
      throw NumericError("green_plane: tail tolerance not reachable within 10^4 preimages");
    }
    const double t_plus = cover.parameter(a, center + k).imag() - t0.imag();
    const double t_minus = t0.imag() - cover.parameter(a, center - k).imag();
    const double convex_from = beta / std::sqrt(3.0);
    if (t_plus < convex_from || t_minus < convex_from) continue;
    const HalfPlaneTail plus = half_plane_side(t_plus, alpha, beta);
    const HalfPlaneTail minus = half_plane_side(t_minus, alpha, beta);
    const double halfwidth = plus.halfwidth + minus.halfwidth;
    if (std::expm1(halfwidth) > tol_rel) continue;
    out.terms.clear();
    for (int m = -k + 1; m <= k - 1; ++m) out.terms.push_back(-cover.lift(a, center + m).log_modulus);
    out.tail_estimate = plus.estimate + minus.estimate;
    out.tail_halfwidth = halfwidth;
    return out;
  }
}

}  // namespace

std::vector<double> preimage_moduli(const CoverMap& cover, Complex a, std::size_t max_count,
                                    double cutoff) {
  std::vector<double> out;
  for (const auto& lift : cover.smallest_lifts(a, max_count)) {
    if (cutoff > 0.0 && lift.defect < cutoff) break;  // 1 - |eta| < cutoff, roughly defect / 2
    out.push_back(lift.modulus());
  }
  return out;
}

EvalResult lempert_N_plane(const PlaneDomain& domain, Complex a, Complex z, int n) {
  if (n < 1 || n > 1000) throw DomainError("N must lie in [1, 1000]");
  const CoverMap cover(domain, z);
  domain.require_interior(a, "pole");
  EvalResult out;
  out.certificate = DiscExpr::compose(DiscExpr::cover(cover), DiscExpr::rotation(0.0));
  if (std::abs(a - z) <= kPoleHitTol) {
    out.nodes.emplace_back(0.0, 0.0);
    out.value = 0.0;
    return out;
  }
  double log_value = 0.0;
  for (const auto& lift : cover.smallest_lifts(a, static_cast<std::size_t>(n))) {
    out.nodes.push_back(lift.node);
    log_value += lift.log_modulus;
  }
  out.value = std::exp(log_value);
  return out;
}

EvalResult lempert_poleset_plane(const PoleSet& poles, Complex z) {
  const CoverMap cover(poles.domain(), z);
  EvalResult out;
  out.certificate = DiscExpr::compose(DiscExpr::cover(cover), DiscExpr::rotation(0.0));
  double log_value = 0.0;
  for (const auto& a : poles.points()) {
    if (std::abs(a - z) <= kPoleHitTol) {
      out.nodes.emplace_back(0.0, 0.0);
      log_value = -kInf;
      continue;
    }
    const Lift lift = cover.minimal_lift(a);
    out.nodes.push_back(lift.node);
    log_value += lift.log_modulus;
  }
  out.value = std::exp(log_value);
  return out;
}

double lempert_single(const PlaneDomain& domain, Complex a, Complex z) {
  return lempert_poleset_plane(PoleSet(domain, {a}), z).value;
}

GreenValue green_plane(const PlaneDomain& domain, Complex a, Complex z, double tol_tail) {
  if (!(tol_tail > 0.0)) throw DomainError("tail tolerance must be positive");
  const CoverMap cover(domain, z);
  domain.require_interior(a, "pole");
  if (std::abs(a - z) <= kPoleHitTol) return {0.0, 0.0, 1};
  const LogSeries series = log_series(cover, a, tol_tail, 0);
  GreenValue out;
  out.lifts_used = series.terms.size();
  if (series.hit()) return out;
  out.value = std::exp(-(series.explicit_sum() + series.tail_estimate));
  out.tail_bound = std::expm1(series.tail_halfwidth);
  return out;
}

GreenValue green_poleset_plane(const PoleSet& poles, Complex z, double tol_tail) {
  GreenValue out{1.0, 0.0, 0};
  double log_err = 0.0;
  for (const auto& a : poles.points()) {
    const GreenValue g = green_plane(poles.domain(), a, z, tol_tail);
    out.value *= g.value;
    out.lifts_used += g.lifts_used;
    log_err += std::log1p(g.tail_bound);
  }
  out.tail_bound = std::expm1(log_err);
  return out;
}

double product_tail_bound(const PlaneDomain& domain, Complex a, Complex z, std::size_t n,
                          double tol_tail) {
  const CoverMap cover(domain, z);
  domain.require_interior(a, "pole");
  if (domain.kind() == DomainKind::UnitDisc) return 0.0;
  const LogSeries series = log_series(cover, a, tol_tail, n);
  std::vector<double> terms = series.terms;
  std::sort(terms.begin(), terms.end(), std::greater<>());
  double rest = series.tail_estimate + series.tail_halfwidth;
  // Sum the terms after the n largest, i.e. after the n smallest moduli.
  for (std::size_t i = terms.size(); i-- > n;) rest += terms[i];
  return -std::expm1(-rest);
}

double ray_exit_distance(const PlaneDomain& domain, Complex z, Complex direction) {
  const Complex d = direction / std::abs(direction);
  const double b = (std::conj(z) * d).real();
  const double z2 = std::norm(z);
  double exit = -b + std::sqrt(b * b + 1.0 - z2);
  double inner = 0.0;
  if (domain.kind() == DomainKind::Annulus) inner = domain.inner_radius();
  if (domain.kind() != DomainKind::UnitDisc) {
    const double disc = b * b - z2 + inner * inner;
    if (disc >= 0.0) {
      const double r1 = -b - std::sqrt(disc);
      const double r2 = -b + std::sqrt(disc);
      if (r1 > 0.0) exit = std::min(exit, r1);
      else if (r2 > 0.0) exit = std::min(exit, r2);
    }
  }
  return exit;
}

Complex find_pole_with_value(const PlaneDomain& domain, Complex z, double t, Complex direction) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("target value must lie in (0, 1)");
  if (!(std::abs(direction) > 0.0)) throw DomainError("direction must be nonzero");
  domain.require_interior(z, "base point");
  const Complex d = direction / std::abs(direction);
  const double exit = ray_exit_distance(domain, z, d);
  const CoverMap cover(domain, z);

  const auto profile = [&](double r) {
    const Complex a = z + r * d;
    if (!domain.contains(a)) return 1.0;
    if (r <= kPoleHitTol) return 0.0;
    return cover.minimal_lift(a).modulus();
  };

  std::vector<double> grid;
  constexpr int kScan = 64;
  for (int i = 1; i < kScan; ++i) grid.push_back(exit * i / kScan);
  for (int k = 7; k <= 46; ++k) grid.push_back(exit * (1.0 - std::ldexp(1.0, -k)));

  double lo = 0.0;
  double hi = -1.0;
  std::ostringstream samples;
  for (const double r : grid) {
    const double v = profile(r);
    if (v >= t) {
      hi = r;
      break;
    }
    lo = r;
    samples << " l(" << r << ")=" << v;
  }
  if (hi < 0.0) {
    throw NumericError("find_pole_with_value: no bracket along the ray; samples:" + samples.str());
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = profile(mid);
    if (v < t) lo = mid;
    else hi = mid;
    if (std::abs(v - t) <= 1e-14) {
      lo = hi = mid;
      break;
    }
  }
  const double r = std::abs(profile(lo) - t) <= std::abs(profile(hi) - t) ? lo : hi;
  return z + r * d;
}

}  // namespace lempert
