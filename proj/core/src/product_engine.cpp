#include "lempert/product_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lempert/cover_map.hpp"
#include "lempert/covering.hpp"
#include "lempert/errors.hpp"
#include "parallel.hpp"

namespace lempert {
namespace {

double lempert_of(const PoleSet& poles, Complex z) {
  if (poles.domain().kind() == DomainKind::UnitDisc) return lempert_disc(poles, z).value;
  return lempert_poleset_plane(poles, z).value;
}

EvalResult lempert_with_disc(const PoleSet& poles, Complex z) {
  if (poles.domain().kind() == DomainKind::UnitDisc) return lempert_disc(poles, z);
  return lempert_poleset_plane(poles, z);
}

struct Green {
  double value = 1.0;
  double tail = 0.0;
};

Green green_of(const PoleSet& poles, Complex z) {
  if (poles.domain().kind() == DomainKind::UnitDisc) return {green_disc(poles, z), 0.0};
  const auto g = green_poleset_plane(poles, z);
  return {g.value, g.tail_bound};
}

double certificate_residual(const Theorem5Certificate& c, const PoleSet& A, Complex b, Complex z, Complex w) {
  auto at0 = c.xi(0.0);
  double r = std::max(std::abs(at0[0] - z), std::abs(at0[1] - w));
  for (std::size_t j = 0; j < A.size(); ++j) {
    const auto v = c.xi(c.eta[j]);
    r = std::max({r, std::abs(v[0] - A[j]), std::abs(v[1] - b)});
  }
  return r;
}

// min |x - y| over x in xs, y in ys; ys is sorted by real part on entry.
double set_distance(const std::vector<Complex>& xs, const std::vector<Complex>& ys) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& x : xs) {
    auto it = std::lower_bound(ys.begin(), ys.end(), x.real(),
                               [](const Complex& y, double re) { return y.real() < re; });
    for (auto up = it; up != ys.end() && up->real() - x.real() < best; ++up) best = std::min(best, std::abs(*up - x));
    for (auto dn = it; dn != ys.begin();) {
      --dn;
      if (x.real() - dn->real() >= best) break;
      best = std::min(best, std::abs(*dn - x));
    }
  }
  return best;
}

std::vector<Complex> ratios(const std::vector<Complex>& num, const std::vector<Complex>& den, bool distinct) {
  std::vector<Complex> out;
  out.reserve(num.size() * den.size());
  for (std::size_t i = 0; i < num.size(); ++i) {
    for (std::size_t j = 0; j < den.size(); ++j) {
      if (distinct && &num == &den && i == j) continue;
      out.push_back(num[i] / den[j]);
    }
  }
  return out;
}

std::vector<Complex> nodes_of(const std::vector<Lift>& lifts) {
  std::vector<Complex> out;
  for (const auto& l : lifts) out.push_back(l.node);
  return out;
}

double level_of(const PoleSet& B, Complex w) {
  double v = 1.0;
  for (const auto& b : B.points()) v *= std::abs(moebius(b, w));
  return v;
}

// Distance from p to the unit circle along p + r d, |d| = 1.
double disc_exit(Complex p, Complex d) {
  const double pd = (std::conj(d) * p).real();
  return -pd + std::sqrt(pd * pd + 1.0 - std::norm(p));
}

// First crossing of l(B, .) = level on the ray from b1 in direction d.
std::optional<Complex> level_crossing(const PoleSet& B, double level, Complex d) {
  const Complex b1 = B[0];
  const double exit = disc_exit(b1, d);
  std::vector<double> grid;
  for (int i = 1; i < 256; ++i) grid.push_back(exit * i / 256.0);
  for (int k = 9; k <= 46; ++k) grid.push_back(exit * (1.0 - std::ldexp(1.0, -k)));
  double lo = 0.0;
  double hi = -1.0;
  for (const double r : grid) {
    if (level_of(B, b1 + r * d) >= level) {
      hi = r;
      break;
    }
    lo = r;
  }
  if (hi < 0.0) return std::nullopt;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = level_of(B, b1 + mid * d);
    if (v == level) return b1 + mid * d;
    (v < level ? lo : hi) = mid;
  }
  const Complex wl = b1 + lo * d;
  const Complex wh = b1 + hi * d;
  return std::abs(level_of(B, wl) - level) <= std::abs(level_of(B, wh) - level) ? wl : wh;
}

}  // namespace

BoundsReport theorem5_bounds(const PoleSet& A, const PlaneDomain& G, Complex b, Complex z, Complex w) {
  A.domain().require_interior(z, "base point z");
  G.require_interior(w, "base point w");
  G.require_interior(b, "pole b");
  BoundsReport out;
  const auto dval = lempert_with_disc(A, z);
  const auto gval = lempert_N_plane(G, b, w, 1);
  out.l_D = dval.value;
  out.l_G = gval.value;
  out.l_G_N = lempert_N_plane(G, b, w, static_cast<int>(A.size())).value;
  out.lower = std::max(out.l_D, out.l_G_N);
  out.equality_flag = std::abs(out.l_G - out.l_G_N) <= kEqualityFlagTol;

  const double top = std::max(out.l_D, out.l_G);
  // Slacks pushing alpha to 1 are skipped; the first failure after a
  // success ends the tightening.
  bool found = false;
  for (int k = 6; k <= 11; ++k) {
    const double slack = std::pow(10.0, -k);
    const double alpha = top + slack;
    if (!(alpha < 1.0)) continue;
    Theorem5Certificate cert;
    double res = std::numeric_limits<double>::infinity();
    try {
      cert = theorem5_certificate(dval.certificate, dval.nodes, gval.certificate, gval.nodes.front(), alpha);
      res = certificate_residual(cert, A, b, z, w);
    } catch (const NumericError&) {
    }
    if (!(res <= kCertificateResidualTol)) {
      if (found) break;
      continue;
    }
    out.certificate = std::move(cert);
    out.slack = slack;
    out.residual = res;
    out.upper = out.certificate.bound;
    found = true;
  }
  if (!found) throw NumericError("no admissible certificate disc for the two-sided bounds");
  return out;
}

Theorem7Decision theorem7_decide(const PoleSet& A, const PoleSet& B) {
  if (A.domain().kind() != DomainKind::UnitDisc || B.domain().kind() != DomainKind::UnitDisc) {
    throw DomainError("the rotation test needs pole sets in the unit disc");
  }
  if (A.size() != 2 || B.size() != 2) throw DomainError("the rotation test needs two-point pole sets");
  for (const auto& p : {A[0], A[1], B[0], B[1]}) {
    if (std::abs(p) <= kPoleHitTol) throw DomainError("the rotation test needs 0 outside A and B");
  }
  Theorem7Decision out;
  out.l_A = std::abs(A[0] * A[1]);
  out.l_B = std::abs(B[0] * B[1]);
  if (std::abs(out.l_A - out.l_B) > kRotationTol) {
    throw DomainError("the rotation test needs l(A, 0) = l(B, 0)");
  }
  out.value = std::numeric_limits<double>::quiet_NaN();
  for (const bool swapped : {false, true}) {
    const Complex b1 = swapped ? B[1] : B[0];
    const Complex b2 = swapped ? B[0] : B[1];
    const double theta = std::arg(b1 / A[0]);
    const Complex r = std::polar(1.0, theta);
    if (std::abs(r * A[0] - b1) <= kRotationTol && std::abs(r * A[1] - b2) <= kRotationTol) {
      out.rotation = true;
      out.swapped = swapped;
      out.theta = theta;
      out.value = out.l_A;
      out.certificate = DiscExpr::pair(DiscExpr::identity(), DiscExpr::rotation(theta));
      out.nodes = {A[0], A[1]};
      break;
    }
  }
  return out;
}

Corollary8Report corollary8_sample(const PoleSet& A, Complex z, const PoleSet& B, std::size_t count,
                                   std::uint64_t seed, int threads) {
  if (A.domain().kind() != DomainKind::UnitDisc || B.domain().kind() != DomainKind::UnitDisc) {
    throw DomainError("level sampling needs pole sets in the unit disc");
  }
  if (A.size() != 2 || B.size() != 2) throw DomainError("level sampling needs two-point pole sets");
  A.domain().require_interior(z, "base point z");
  Corollary8Report out;
  out.level = level_of(A, z);
  if (!(out.level > 0.0)) throw DomainError("level sampling needs z outside A");

  // m = moebius(b_s1) o rotation o moebius(a_1) maps a_1 -> b_s1, a_2 -> b_s2
  // when the pseudo-distances agree.
  const Complex u_a = moebius(A[0], A[1]);
  for (const bool swapped : {false, true}) {
    const Complex b1 = swapped ? B[1] : B[0];
    const Complex b2 = swapped ? B[0] : B[1];
    const Complex u_b = moebius(b1, b2);
    if (std::abs(std::abs(u_a) - std::abs(u_b)) > kRotationTol) continue;
    const Complex rot = u_b / u_a;
    const Complex wa = moebius(b1, rot * moebius(A[0], z));
    const bool seen = std::any_of(out.automorphic_points.begin(), out.automorphic_points.end(),
                                  [&](Complex p) { return std::abs(p - wa) <= kRotationTol; });
    if (!seen) out.automorphic_points.push_back(wa);
  }

  out.samples.resize(count);
  detail::parallel_for(count, threads, [&](std::size_t i) {
    std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(i));
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int attempt = 0; attempt < 100; ++attempt) {
      const auto w = level_crossing(B, out.level, std::polar(1.0, angle(rng)));
      if (!w) continue;
      LevelSample s;
      s.ray = i;
      s.w = *w;
      s.level_residual = std::abs(level_of(B, *w) - out.level);
      s.automorphic = std::any_of(out.automorphic_points.begin(), out.automorphic_points.end(),
                                  [&](Complex p) { return std::abs(p - *w) <= 1e-8; });
      out.samples[i] = s;
      return;
    }
    throw NumericError("level sampling: no level crossing on 100 rays");
  });
  return out;
}

Prop9Report prop9_extend(const PoleSet& A, const PoleSet& B, Complex z, Complex w, double q, const PoleSet& A1,
                         const PoleSet& B1) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("q must lie in (0, 1)");
  if (A1.domain() != A.domain() || B1.domain() != B.domain()) {
    throw DomainError("extension poles must lie in the same domains");
  }
  if (A.intersects(A1) || B.intersects(B1)) throw DomainError("extension poles must be disjoint from A and B");
  A.domain().require_interior(z, "base point z");
  B.domain().require_interior(w, "base point w");
  Prop9Report out;
  out.q = q;
  out.l_D_A = lempert_of(A, z);
  out.l_G_B = lempert_of(B, w);
  out.base_max = std::max(out.l_D_A, out.l_G_B);
  out.product_value = out.base_max / q;
  const Green gd = green_of(A1, z);
  const Green gg = green_of(B1, w);
  out.g_D_A1 = gd.value;
  out.g_G_B1 = gg.value;
  out.green_product = gd.value * gg.value;
  out.green_tail_bound = (1.0 + gd.tail) * (1.0 + gg.tail) - 1.0;
  out.condition3 = out.green_product > q;
  out.chain_lower = out.product_value * out.green_product;
  out.extended_max = std::max(lempert_of(A.merged(A1), z), lempert_of(B.merged(B1), w));
  out.strict = out.chain_lower > out.extended_max;
  return out;
}

Prop10Report prop10_construct(const PlaneDomain& D, const PlaneDomain& G, Complex z, Complex w, Complex b,
                              const Prop10Settings& settings) {
  if (G.simply_connected()) throw DomainError("the equality construction needs a non-simply-connected G");
  if (settings.n < 2 || settings.n > PoleSet::kMaxSize) throw DomainError("N must lie in [2, 64]");
  if (settings.lifts < settings.n) throw DomainError("lift count must be at least N");
  if (settings.max_retries < 1) throw DomainError("max_retries must be at least 1");
  D.require_interior(z, "base point z");
  G.require_interior(w, "base point w");
  G.require_interior(b, "pole b");
  if (std::abs(b - w) <= kPoleHitTol) throw DomainError("the equality construction needs b != w");

  const std::size_t n = settings.n;
  const CoverMap pi(G, w);
  const CoverMap tau(D, z);
  const auto b_lifts = pi.smallest_lifts(b, settings.lifts);
  const auto b_nodes = nodes_of(b_lifts);
  const std::vector<Complex> b_small(b_nodes.begin(), b_nodes.begin() + static_cast<std::ptrdiff_t>(n));
  auto b_small_ratios = ratios(b_small, b_small, true);
  std::sort(b_small_ratios.begin(), b_small_ratios.end(),
            [](Complex x, Complex y) { return x.real() < y.real(); });

  Prop10Report out;
  for (std::size_t k = 0; k < n; ++k) out.targets.push_back(std::min(b_lifts[k].modulus(), kTargetCap));

  for (int attempt = 0; attempt < settings.max_retries; ++attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(settings.seed), static_cast<std::uint32_t>(settings.seed >> 32),
                      static_cast<std::uint32_t>(attempt)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::vector<Complex> poles;
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) {
      try {
        const Complex a = find_pole_with_value(D, z, out.targets[k], std::polar(1.0, angle(rng)));
        for (const auto& p : poles) ok = ok && std::abs(p - a) > 1e-8;
        poles.push_back(a);
      } catch (const NumericError&) {
        ok = false;
      }
    }
    if (!ok) continue;
    std::vector<Complex> minimal;
    for (const auto& a : poles) minimal.push_back(tau.minimal_lift(a).node);
    const double margin = set_distance(ratios(minimal, minimal, true), b_small_ratios);
    if (!(margin > settings.margin)) continue;
    out.poles = poles;
    out.minimal_margin = margin;
    out.attempts = attempt + 1;
    break;
  }
  if (out.poles.empty()) throw NumericError("equality construction: genericity margin not reached");

  for (std::size_t k = 1; k <= n; ++k) {
    const PoleSet prefix(D, std::vector<Complex>(out.poles.begin(), out.poles.begin() + static_cast<std::ptrdiff_t>(k)));
    out.l_D_prefix.push_back(lempert_of(prefix, z));
    out.l_G_prefix.push_back(lempert_N_plane(G, b, w, static_cast<int>(k)).value);
    out.equality_residual = std::max(out.equality_residual, std::abs(out.l_D_prefix.back() - out.l_G_prefix.back()));
  }

  auto all_b = ratios(b_nodes, b_nodes, false);
  std::sort(all_b.begin(), all_b.end(), [](Complex x, Complex y) { return x.real() < y.real(); });
  const auto xi1 = nodes_of(tau.smallest_lifts(out.poles[0], settings.lifts));
  const auto xi2 = nodes_of(tau.smallest_lifts(out.poles[1], settings.lifts));
  out.literal_margin = set_distance(ratios(xi1, xi2, false), all_b);

  out.bounds = theorem5_bounds(PoleSet(D, out.poles), G, b, z, w);
  return out;
}

Prop11Report prop11_construct(const PlaneDomain& D, const PlaneDomain& G, Complex z, Complex w, Complex b,
                              std::optional<std::vector<Complex>> extra, const Prop10Settings& settings,
                              const OptimizerSettings& optimizer) {
  Prop10Settings two = settings;
  two.n = 2;
  Prop11Report out;
  out.base = prop10_construct(D, G, z, w, b, two);
  const PoleSet A2(D, out.base.poles);
  out.l_D_A2 = out.base.l_D_prefix[1];
  out.l_G2 = out.base.l_G_prefix[1];
  const auto numeric = mixed_product_upper(A2, PoleSet(G, {b}), z, w, optimizer);
  out.product_upper = std::min(out.base.bounds.upper, numeric.value);
  out.q = out.l_D_A2 / out.product_upper;

  if (!extra) {
    const double t = 0.5 * (1.0 + out.q);
    std::mt19937_64 rng(settings.seed ^ 0x11u);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int attempt = 0; attempt < settings.max_retries && !extra; ++attempt) {
      try {
        const Complex a = find_pole_with_value(D, z, t, std::polar(1.0, angle(rng)));
        if (std::abs(a - out.base.poles[0]) > 1e-8 && std::abs(a - out.base.poles[1]) > 1e-8) {
          extra = std::vector<Complex>{a};
        }
      } catch (const NumericError&) {
      }
    }
    if (!extra) throw NumericError("gap construction: no extra pole found");
  }
  out.extra = *extra;
  const PoleSet E(D, out.extra);
  if (A2.intersects(E)) throw DomainError("extra poles must avoid A_2");
  out.l_D_extra = lempert_of(E, z);
  if (!(out.l_D_extra > out.q)) throw DomainError("extra poles need l_D(extra, z) > q");
  out.g_G = green_plane(G, b, w).value;
  out.l_D_union = lempert_of(A2.merged(E), z);
  out.rhs = std::max(out.l_D_union, out.g_G);
  out.chain_estimate = out.product_upper * out.l_D_extra;
  out.rhs_strict = out.l_G2 > out.rhs;
  out.strict = out.l_D_extra > out.q + 1e-9;
  return out;
}

}  // namespace lempert
