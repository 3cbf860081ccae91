#pragma once

#include <string>

#include "lempert/complex_kernel.hpp"

namespace lempert {

enum class DomainKind { UnitDisc, PuncturedDisc, Annulus };

/// One of the three supported plane domains, all contained in the unit disc.
class PlaneDomain {
 public:
  static constexpr double kMembershipMargin = 1e-14;
  static constexpr double kMinInnerRadius = 1e-6;
  static constexpr double kMaxInnerRadius = 1.0 - 1e-6;

  static PlaneDomain unit_disc() { return PlaneDomain(DomainKind::UnitDisc, 0.0); }
  static PlaneDomain punctured_disc() { return PlaneDomain(DomainKind::PuncturedDisc, 0.0); }
  /// {R < |z| < 1}; requires 1e-6 <= R <= 1 - 1e-6.
  static PlaneDomain annulus(double inner_radius);

  [[nodiscard]] DomainKind kind() const noexcept { return kind_; }
  [[nodiscard]] double inner_radius() const noexcept { return inner_radius_; }
  [[nodiscard]] bool simply_connected() const noexcept { return kind_ == DomainKind::UnitDisc; }

  /// Interior membership with a 1e-14 margin from every boundary component.
  [[nodiscard]] bool contains(Complex z) const noexcept;
  /// Throws DomainError naming `what` if z is not interior.
  void require_interior(Complex z, const char* what) const;

  /// "disc", "punctured", "annulus:R".
  [[nodiscard]] std::string name() const;
  /// Inverse of name(); throws DomainError.
  static PlaneDomain parse(const std::string& text);

  friend bool operator==(const PlaneDomain&, const PlaneDomain&) = default;

 private:
  PlaneDomain(DomainKind kind, double inner_radius) : kind_(kind), inner_radius_(inner_radius) {}

  DomainKind kind_;
  double inner_radius_;
};

}  // namespace lempert
