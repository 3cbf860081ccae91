#include "lempert/interpolation.hpp"

#include <cmath>
#include <optional>

#include "lempert/errors.hpp"

namespace lempert {
namespace {

double product_modulus(std::span<const Complex> v) {
  double p = 1.0;
  for (const auto& x : v) p *= std::abs(x);
  return p;
}

double branch_value(std::span<const Complex> mu, double a, Branch branch) {
  const auto c = curves_gh(mu, a);
  return branch == Branch::Small ? c.g : c.h;
}

// Sample points of [0, 1): the uniform grid, then a geometric refinement
// toward 1 where both curves approach their limits.
std::vector<double> scan_points() {
  std::vector<double> pts;
  for (int i = 0; i < 1024; ++i) pts.push_back(i / 1024.0);
  for (int k = 11; k <= 52; ++k) pts.push_back(1.0 - std::ldexp(1.0, -k));
  return pts;
}

// The inner solve: all targets nonzero.
Lemma4Solution solve_nonzero(std::span<const Complex> mu, double q) {
  const double p = product_modulus(mu);
  Lemma4Solution out;
  out.branch = q <= std::sqrt(p) ? Branch::Small : Branch::Large;

  static const std::vector<double> pts = scan_points();
  std::optional<std::pair<double, double>> bracket;
  double prev_a = 0.0;
  double prev_v = branch_value(mu, 0.0, out.branch) - q;
  if (std::abs(prev_v) <= kLemma4ValueTol) bracket = std::pair{0.0, 0.0};
  for (std::size_t i = 1; i < pts.size() && !bracket; ++i) {
    const double v = branch_value(mu, pts[i], out.branch) - q;
    if (std::abs(v) <= kLemma4ValueTol) {
      bracket = std::pair{pts[i], pts[i]};
    } else if ((prev_v < 0.0) != (v < 0.0)) {
      bracket = std::pair{prev_a, pts[i]};
    }
    prev_a = pts[i];
    prev_v = v;
  }
  if (!bracket) throw NumericError("interpolation: no bracket for the target product");

  auto [lo, hi] = *bracket;
  double a = lo;
  if (hi > lo) {
    double f_lo = branch_value(mu, lo, out.branch) - q;
    a = 0.5 * (lo + hi);
    for (int it = 0; it < kLemma4MaxBisections; ++it) {
      a = 0.5 * (lo + hi);
      const double v = branch_value(mu, a, out.branch) - q;
      if (std::abs(v) <= kLemma4ValueTol || a == lo || a == hi) break;
      if ((v < 0.0) == (f_lo < 0.0)) {
        lo = a;
        f_lo = v;
      } else {
        hi = a;
      }
    }
  }
  out.a = a;
  out.eta.reserve(mu.size());
  for (const auto& m : mu) {
    const auto r = solve_node_quadratic(a, m);
    out.eta.push_back(out.branch == Branch::Small ? r.small : r.large);
  }
  out.f = DiscExpr::blaschke(BlaschkeProduct(kPi, {Complex(0.0), Complex(a, 0.0)}));
  out.reduced_mu.assign(mu.begin(), mu.end());
  return out;
}

std::vector<Complex> lift_targets(std::span<const Complex> mu, double alpha) {
  std::vector<Complex> out;
  out.reserve(mu.size());
  for (const auto& m : mu) {
    out.push_back(m == Complex(0.0) ? Complex(alpha, 0.0) : solve_node_quadratic(alpha, m).small);
  }
  return out;
}

}  // namespace

CurveValues curves_gh(std::span<const Complex> mu, double a) {
  if (!(a >= 0.0 && a < 1.0)) throw DomainError("curve parameter a must lie in [0, 1)");
  CurveValues out{1.0, 1.0};
  for (const auto& m : mu) {
    if (m == Complex(0.0)) throw DomainError("curves_gh needs nonzero targets");
    const auto r = solve_node_quadratic(a, m);
    out.g *= std::abs(r.small);
    out.h *= std::abs(r.large);
  }
  return out;
}

Lemma4Solution lemma4_solve(const Lemma4Problem& problem) {
  const auto& mu = problem.mu;
  if (mu.empty()) throw DomainError("interpolation needs at least one target");
  if (mu.size() > 64) throw DomainError("interpolation supports at most 64 targets");
  for (const auto& m : mu) (void)DiscPoint(m);
  const double p = product_modulus(mu);
  const double q = problem.q;
  if (!(q > p && q < 1.0)) throw DomainError("q must lie strictly between prod |mu_j| and 1");

  bool has_zero = false;
  for (const auto& m : mu) has_zero = has_zero || m == Complex(0.0);
  if (!has_zero) return solve_nonzero(mu, q);

  // alpha close to 1 puts a node near the circle, where the outer factor
  // amplifies rounding like 1 / (1 - alpha), so the smallest workable
  // alpha = 1 - 2^-k is taken.
  double alpha = 0.0;
  std::vector<Complex> reduced;
  auto accept = [&](double a) {
    alpha = a;
    reduced = lift_targets(mu, a);
    return product_modulus(reduced) < q * (1.0 - 1e-3);
  };
  bool found = false;
  for (int k = 1; k <= 20 && !found; ++k) found = accept(1.0 - std::ldexp(1.0, -k));
  for (int k = 2; k <= 60 && !found; ++k) found = accept(std::ldexp(1.0, -k));
  if (!found) throw NumericError("interpolation: zero reduction failed to lower the product below q");
  Lemma4Solution out = solve_nonzero(reduced, q);
  out.reduction_alpha = alpha;
  out.f = DiscExpr::compose(DiscExpr::blaschke(BlaschkeProduct(kPi, {Complex(0.0), Complex(alpha, 0.0)})), out.f);
  return out;
}

Theorem5Certificate theorem5_certificate(const DiscExpr& phi, std::span<const Complex> lambda,
                                         const DiscExpr& psi, Complex zeta, double alpha) {
  if (phi.arity() != 1 || psi.arity() != 1) throw DomainError("certificate factors must be scalar discs");
  const double floor = std::max(product_modulus(lambda), std::abs(zeta));
  if (!(alpha < 1.0 && alpha > floor)) {
    throw DomainError("alpha must satisfy max(prod |lambda|, |zeta|) < alpha < 1");
  }
  Theorem5Certificate out;
  out.lemma = lemma4_solve({std::vector<Complex>(lambda.begin(), lambda.end()), alpha});
  out.eta = out.lemma.eta;
  const auto b = BlaschkeProduct::normalized_from_zeros(out.eta);
  // B(0) = prod |eta_j| agrees with alpha only to the bisection tolerance;
  // centring the Moebius factor on the computed B(0) keeps xi(0) = (z, w) exact.
  const double beta = std::abs(b(0.0));
  out.bound = beta;
  const DiscExpr second = DiscExpr::compose(
      psi, DiscExpr::compose(DiscExpr::scale(zeta / beta),
                             DiscExpr::compose(DiscExpr::moebius(Complex(beta, 0.0)), DiscExpr::blaschke(b))));
  out.xi = DiscExpr::pair(DiscExpr::compose(phi, out.lemma.f), second);
  return out;
}

}  // namespace lempert
