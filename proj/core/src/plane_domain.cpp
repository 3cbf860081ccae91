#include "lempert/plane_domain.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "lempert/errors.hpp"

namespace lempert {

PlaneDomain PlaneDomain::annulus(double inner_radius) {
  if (!(inner_radius >= kMinInnerRadius && inner_radius <= kMaxInnerRadius)) {
    throw DomainError("annulus inner radius must lie in [1e-6, 1 - 1e-6]");
  }
  return PlaneDomain(DomainKind::Annulus, inner_radius);
}

bool PlaneDomain::contains(Complex z) const noexcept {
  const double r = std::abs(z);
  if (!std::isfinite(r) || r > 1.0 - kMembershipMargin) return false;
  switch (kind_) {
    case DomainKind::UnitDisc:
      return true;
    case DomainKind::PuncturedDisc:
      return r >= kMembershipMargin;
    case DomainKind::Annulus:
      return r >= inner_radius_ + kMembershipMargin;
  }
  return false;
}

void PlaneDomain::require_interior(Complex z, const char* what) const {
  if (!contains(z)) {
    std::ostringstream os;
    os << what << " (" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i) is not interior to "
       << name();
    throw DomainError(os.str());
  }
}

std::string PlaneDomain::name() const {
  switch (kind_) {
    case DomainKind::UnitDisc:
      return "disc";
    case DomainKind::PuncturedDisc:
      return "punctured";
    case DomainKind::Annulus: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "annulus:%.17g", inner_radius_);
      return buf;
    }
  }
  return "?";
}

PlaneDomain PlaneDomain::parse(const std::string& text) {
  if (text == "disc") return unit_disc();
  if (text == "punctured") return punctured_disc();
  if (text.rfind("annulus:", 0) == 0) {
    const std::string radius = text.substr(8);
    std::size_t used = 0;
    double r = 0.0;
    try {
      r = std::stod(radius, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != radius.size()) throw DomainError("bad annulus radius in '" + text + "'");
    return annulus(r);
  }
  throw DomainError("unknown domain '" + text + "' (expected disc, punctured or annulus:R)");
}

}  // namespace lempert
