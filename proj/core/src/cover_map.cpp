#include "lempert/cover_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lempert/errors.hpp"

namespace lempert {
namespace {

Complex parameter_to_disc(DomainKind kind, Complex t) {
  switch (kind) {
    case DomainKind::Annulus:
      return std::tanh(0.5 * t);
    case DomainKind::PuncturedDisc:
      return (t + 1.0) / (t - 1.0);
    case DomainKind::UnitDisc:
      return t;
  }
  return t;
}

double argument_in_turn(Complex z) {
  double a = std::arg(z);
  if (a < 0.0) a += 2.0 * kPi;
  return a;
}

// sinh(w) / cosh(v) for Re w == Re v, without overflow for large |Re w|.
Complex sinh_over_cosh(Complex w, Complex v) {
  const double x = w.real();
  if (std::abs(x) <= 1.0) return std::sinh(w) / std::cosh(v);
  if (x > 0.0) return std::exp(w - v) * (1.0 - std::exp(-2.0 * w)) / (1.0 + std::exp(-2.0 * v));
  return -std::exp(v - w) * (1.0 - std::exp(2.0 * w)) / (1.0 + std::exp(2.0 * v));
}

}  // namespace

double Lift::modulus() const { return std::exp(log_modulus); }

CoverMap::CoverMap(PlaneDomain domain, Complex base_point)
    : domain_(domain), base_point_(base_point) {
  domain_.require_interior(base_point, "base point");
  if (domain_.kind() == DomainKind::UnitDisc) {
    base_parameter_ = base_point;
    return;
  }
  // Minimal modulus lifts have the smallest |arg z + 2 pi k|; arg z in
  // (-pi, pi] makes k = 0 minimal, with a tie against k = -1 at arg z = pi.
  base_winding_ = 0;
  base_parameter_ = parameter(base_point, 0);
  if (std::arg(base_point) == kPi) {
    const Complex other = parameter(base_point, -1);
    const Complex d0 = parameter_to_disc(domain_.kind(), base_parameter_);
    const Complex d1 = parameter_to_disc(domain_.kind(), other);
    if (argument_in_turn(d1) < argument_in_turn(d0)) {
      base_winding_ = -1;
      base_parameter_ = other;
    }
  }
}

CoverMap::CoverMap(PlaneDomain domain, Complex base_point, int base_winding)
    : domain_(domain), base_point_(base_point) {
  domain_.require_interior(base_point, "base point");
  base_winding_ = domain_.kind() == DomainKind::UnitDisc ? 0 : base_winding;
  base_parameter_ = parameter(base_point, base_winding_);
}

double CoverMap::annulus_log_length() const {
  return domain_.kind() == DomainKind::Annulus ? -std::log(domain_.inner_radius()) : 0.0;
}

Complex CoverMap::base_lift() const { return parameter_to_disc(domain_.kind(), base_parameter_); }

Complex CoverMap::parameter(Complex a, int winding) const {
  const double theta = std::arg(a) + 2.0 * kPi * winding;
  switch (domain_.kind()) {
    case DomainKind::Annulus: {
      const double len = annulus_log_length();
      return {kPi / len * theta, -kPi / len * (std::log(std::abs(a)) + 0.5 * len)};
    }
    case DomainKind::PuncturedDisc:
      return {std::log(std::abs(a)), theta};
    case DomainKind::UnitDisc:
      return a;
  }
  return a;
}

double CoverMap::winding_period() const {
  switch (domain_.kind()) {
    case DomainKind::Annulus:
      return 2.0 * kPi * kPi / annulus_log_length();
    case DomainKind::PuncturedDisc:
      return 2.0 * kPi;
    case DomainKind::UnitDisc:
      return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

double CoverMap::periodic_coordinate(Complex t) const {
  return domain_.kind() == DomainKind::Annulus ? t.real() : t.imag();
}

Complex CoverMap::raw(Complex zeta) const {
  switch (domain_.kind()) {
    case DomainKind::Annulus: {
      const double len = annulus_log_length();
      return std::exp(Complex(0.0, len / kPi) * std::log((1.0 + zeta) / (1.0 - zeta)) - 0.5 * len);
    }
    case DomainKind::PuncturedDisc:
      return std::exp((zeta + 1.0) / (zeta - 1.0));
    case DomainKind::UnitDisc:
      return zeta;
  }
  return zeta;
}

Complex CoverMap::operator()(Complex zeta) const {
  // Works in the parameter plane so the base lift never has to be formed
  // explicitly; it can sit within rounding of the circle.
  const Complex t0 = base_parameter_;
  switch (domain_.kind()) {
    case DomainKind::Annulus: {
      const double y0 = t0.imag();
      const Complex half0 = 0.5 * t0;
      const double cosh_arg = std::atan2(std::tanh(half0.real()) * std::sin(half0.imag()),
                                         std::cos(half0.imag()));
      const Complex u1 = std::polar(1.0, 2.0 * cosh_arg - y0);
      const Complex u2 = std::polar(1.0, 2.0 * cosh_arg + y0);
      Complex t = t0 + std::log(1.0 - zeta * u1) - std::log(1.0 + zeta * u2);
      const double shift = 2.0 * kPi * std::round(t.imag() / (2.0 * kPi));
      t -= Complex(0.0, shift);
      const double len = annulus_log_length();
      return std::exp(Complex(0.0, len / kPi) * t - 0.5 * len);
    }
    case DomainKind::PuncturedDisc: {
      const Complex kappa = (t0 - 1.0) / (std::conj(t0) - 1.0);
      return std::exp((t0 - zeta * std::conj(t0) * kappa) / (1.0 + zeta * kappa));
    }
    case DomainKind::UnitDisc:
      return moebius(t0, zeta);
  }
  return zeta;
}

Lift CoverMap::lift_from_parameter(Complex t, int winding) const {
  Lift out;
  out.winding = winding;
  const Complex t0 = base_parameter_;
  switch (domain_.kind()) {
    case DomainKind::UnitDisc: {
      out.node = moebius(t0, t);
      out.defect = moebius_defect(t0, t);
      const double r = std::abs(out.node);
      out.log_modulus = out.defect < 0.5 ? 0.5 * std::log1p(-out.defect) : std::log(r);
      break;
    }
    case DomainKind::Annulus: {
      // eta = sinh(A - B) / cosh(conj(A) - B) * conj(cosh A) / cosh A, A = t0/2, B = t/2.
      const Complex half0 = 0.5 * t0;
      const Complex half = 0.5 * t;
      const double cosh_arg = std::atan2(std::tanh(half0.real()) * std::sin(half0.imag()),
                                         std::cos(half0.imag()));
      out.node = sinh_over_cosh(half0 - half, std::conj(half0) - half) * std::polar(1.0, -2.0 * cosh_arg);

      const double gap = std::abs(t.real() - t0.real());
      const double e = std::exp(-gap);
      const double one_minus_e = -std::expm1(-gap);
      const double sd = std::sin(0.5 * (t.imag() - t0.imag()));
      const double cs = std::cos(0.5 * (t.imag() + t0.imag()));
      const double num = one_minus_e * one_minus_e + 4.0 * sd * sd * e;
      const double den = one_minus_e * one_minus_e + 4.0 * cs * cs * e;
      out.defect = 4.0 * std::cos(t.imag()) * std::cos(t0.imag()) * e / den;
      out.log_modulus = num == 0.0 ? -std::numeric_limits<double>::infinity()
                        : out.defect < 0.5 ? 0.5 * std::log1p(-out.defect)
                                           : 0.5 * std::log(num / den);
      break;
    }
    case DomainKind::PuncturedDisc: {
      const Complex kappa = (std::conj(t0) - 1.0) / (t0 - 1.0);
      const Complex diff = t - t0;
      const Complex sum = t + std::conj(t0);
      out.node = -diff / sum * kappa;
      const double sum2 = std::norm(sum);
      out.defect = 4.0 * t.real() * t0.real() / sum2;
      const double diff2 = std::norm(diff);
      out.log_modulus = diff2 == 0.0 ? -std::numeric_limits<double>::infinity()
                        : out.defect < 0.5 ? 0.5 * std::log1p(-out.defect)
                                           : 0.5 * std::log(diff2 / sum2);
      break;
    }
  }
  return out;
}

Lift CoverMap::lift(Complex a, int winding) const {
  domain_.require_interior(a, "pole");
  if (domain_.kind() == DomainKind::UnitDisc && winding != 0) {
    throw DomainError("the unit disc cover has a single preimage (winding 0)");
  }
  return lift_from_parameter(parameter(a, winding), winding);
}

int CoverMap::nearest_winding(Complex a) const {
  if (domain_.kind() == DomainKind::UnitDisc) return 0;
  const double offset = periodic_coordinate(base_parameter_) - periodic_coordinate(parameter(a, 0));
  return static_cast<int>(std::lround(offset / winding_period()));
}

std::vector<Lift> CoverMap::smallest_lifts(Complex a, std::size_t count) const {
  domain_.require_interior(a, "pole");
  std::vector<Lift> out;
  if (count == 0) return out;
  if (domain_.kind() == DomainKind::UnitDisc) {
    out.push_back(lift_from_parameter(a, 0));
    return out;
  }
  // Moduli increase with the distance |p_k - p_0| along the periodic
  // coordinate, so the `count` nearest windings are the smallest lifts.
  const int center = nearest_winding(a);
  const double p0 = periodic_coordinate(base_parameter_);
  const int span = static_cast<int>(count);
  std::vector<std::pair<double, int>> order;
  order.reserve(2 * count + 1);
  for (int m = -span; m <= span; ++m) {
    const int k = center + m;
    order.emplace_back(std::abs(periodic_coordinate(parameter(a, k)) - p0), k);
  }
  std::sort(order.begin(), order.end());
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(lift_from_parameter(parameter(a, order[i].second), order[i].second));
  }
  return out;
}

Lift CoverMap::minimal_lift(Complex a) const { return smallest_lifts(a, 1).front(); }

CoverMap build_cover(const PlaneDomain& domain, Complex z) { return CoverMap(domain, z); }

}  // namespace lempert
