#include "lempert/disc_domain.hpp"

#include <cmath>

#include "lempert/errors.hpp"

namespace lempert {

PoleSet::PoleSet(PlaneDomain domain, std::vector<Complex> points)
    : domain_(domain), points_(std::move(points)) {
  if (points_.empty()) throw DomainError("pole set must be nonempty");
  if (points_.size() > kMaxSize) throw DomainError("pole set exceeds 64 points");
  for (const auto& p : points_) domain_.require_interior(p, "pole");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      if (std::abs(points_[i] - points_[j]) <= kDistinctTol) throw DomainError("pole set has repeated points");
    }
  }
}

PoleSet PoleSet::merged(const PoleSet& other) const {
  if (!(other.domain_ == domain_)) throw DomainError("cannot merge pole sets of different domains");
  std::vector<Complex> all = points_;
  all.insert(all.end(), other.points_.begin(), other.points_.end());
  return PoleSet(domain_, std::move(all));
}

bool PoleSet::intersects(const PoleSet& other) const {
  for (const auto& a : points_) {
    for (const auto& b : other.points_) {
      if (std::abs(a - b) <= kDistinctTol) return true;
    }
  }
  return false;
}

EvalResult lempert_disc(const PoleSet& poles, Complex z) {
  const DiscPoint base(z);
  EvalResult out;
  out.certificate = DiscExpr::moebius(base);
  out.value = 1.0;
  for (const auto& a : poles.points()) {
    if (std::abs(a - z) <= kPoleHitTol) {
      out.nodes.emplace_back(0.0, 0.0);
      out.value = 0.0;
      continue;
    }
    const Complex node = moebius(z, a);
    out.nodes.push_back(node);
    out.value *= std::abs(node);
  }
  return out;
}

EvalResult lempert_disc_N(Complex a, Complex z, int n) {
  if (n < 1) throw DomainError("N must be a positive integer");
  return lempert_disc(PoleSet(PlaneDomain::unit_disc(), {a}), z);
}

double green_disc(const PoleSet& poles, Complex z) { return lempert_disc(poles, z).value; }

}  // namespace lempert
