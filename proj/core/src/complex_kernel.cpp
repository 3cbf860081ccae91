#include "lempert/complex_kernel.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lempert/errors.hpp"

namespace lempert {

DiscPoint::DiscPoint(Complex value) : value_(value) {
  if (!(std::abs(value) < 1.0) || !std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    std::ostringstream os;
    os << "point " << value.real() << (value.imag() < 0 ? "" : "+") << value.imag()
       << "i is not in the open unit disc";
    throw DomainError(os.str());
  }
}

Complex MoebiusTransform::operator()(Complex z) const noexcept { return moebius(alpha_, z); }

double moebius_defect(Complex alpha, Complex z) noexcept {
  const double den = std::norm(1.0 - std::conj(alpha) * z);
  return (1.0 - std::norm(alpha)) * (1.0 - std::norm(z)) / den;
}

DiscPoint moebius_apply(const MoebiusTransform& t, DiscPoint z) { return DiscPoint(t(z)); }

BlaschkeProduct::BlaschkeProduct(double phase, std::vector<Complex> zeros)
    : phase_(phase), zeros_(std::move(zeros)) {
  for (const auto& z : zeros_) (void)DiscPoint(z);
}

BlaschkeProduct BlaschkeProduct::normalized_from_zeros(std::span<const Complex> zeros) {
  // Each factor conj(z)/|z| * moebius(z, .) takes the value |z| at 0.
  double phase = 0.0;
  for (const auto& z : zeros) {
    if (std::abs(z) > 0.0) phase -= std::arg(z);
  }
  return BlaschkeProduct(phase, std::vector<Complex>(zeros.begin(), zeros.end()));
}

Complex BlaschkeProduct::operator()(Complex z) const {
  Complex value = std::polar(1.0, phase_);
  for (const auto& zero : zeros_) value *= moebius(zero, z);
  return value;
}

Complex blaschke_eval(const BlaschkeProduct& b, Complex z) {
  if (std::abs(z) > 1.0 + 1e-15) throw DomainError("blaschke_eval requires |z| <= 1");
  return b(z);
}

NodeRoots solve_node_quadratic(double a, Complex mu) {
  if (!(a >= 0.0 && a < 1.0)) throw DomainError("node quadratic requires 0 <= a < 1");
  if (!(std::abs(mu) < 1.0)) throw DomainError("node quadratic requires |mu| < 1");

  const Complex s = a * (1.0 + mu);
  const Complex root_disc = std::sqrt(s * s - 4.0 * mu);
  // Pick the sign that avoids cancellation in s +- sqrt(disc).
  const double align = s.real() * root_disc.real() + s.imag() * root_disc.imag();
  const Complex big = 0.5 * (align >= 0.0 ? s + root_disc : s - root_disc);
  if (big == Complex(0.0, 0.0)) return {Complex(0.0, 0.0), Complex(0.0, 0.0)};
  const Complex other = mu / big;

  const double m_big = std::abs(big);
  const double m_other = std::abs(other);
  if (std::abs(m_big - m_other) <= 4.0 * std::numeric_limits<double>::epsilon() * m_big) {
    const auto first = [](Complex u, Complex v) {
      if (u.imag() != v.imag()) return u.imag() > v.imag();
      return u.real() >= v.real();
    };
    return first(big, other) ? NodeRoots{big, other} : NodeRoots{other, big};
  }
  return m_big >= m_other ? NodeRoots{other, big} : NodeRoots{big, other};
}

}  // namespace lempert
