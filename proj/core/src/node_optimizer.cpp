#include "lempert/node_optimizer.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "lempert/cover_map.hpp"
#include "lempert/errors.hpp"
#include "lempert/pick.hpp"
#include "parallel.hpp"

namespace lempert {
namespace {

constexpr double kInfeasible = 2.0;
constexpr double kCollision = 1e-8;
constexpr std::size_t kMaxPairs = 16;

// One continuous problem: a subset of pole pairs with a fixed lift per node.
struct Problem {
  std::uint32_t mask = 0;
  std::uint32_t choice = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<Complex> t1;
  std::vector<Complex> t2;
};

struct Evaluation {
  double value = kInfeasible;
  double scale = 0.0;
};

class ShapeObjective {
 public:
  explicit ShapeObjective(const Problem& p) : p_(p), n_(p.pairs.size()) {}

  [[nodiscard]] std::size_t dims() const { return 2 * (n_ - 1); }

  // Node shape: u_0 = 1, u_i = exp(x_{2i-2} + i x_{2i-1}).
  void shape(const std::vector<double>& x, std::array<Complex, SmallHermitian::kMaxDim>& u) const {
    u[0] = 1.0;
    for (std::size_t i = 1; i < n_; ++i) u[i] = std::exp(Complex(x[2 * i - 2], x[2 * i - 1]));
  }

  // Products u_i conj(u_j) and t_i conj(t_j) for one shape, so that testing
  // a scale s costs one Cholesky factorization.
  struct Gram {
    std::array<Complex, SmallHermitian::kMaxDim * SmallHermitian::kMaxDim> uu{};
    std::array<Complex, SmallHermitian::kMaxDim * SmallHermitian::kMaxDim> tt{};
  };

  void gram(const std::array<Complex, SmallHermitian::kMaxDim>& u, const std::vector<Complex>& t, Gram& g) const {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        g.uu[i * SmallHermitian::kMaxDim + j] = u[i] * std::conj(u[j]);
        g.tt[i * SmallHermitian::kMaxDim + j] = t[i] * std::conj(t[j]);
      }
    }
  }

  // Cholesky test of [(s^2 uu - tt) / (1 - s^2 uu)] (lower triangle).
  [[nodiscard]] bool psd(const Gram& g, double s) const {
    constexpr std::size_t K = SmallHermitian::kMaxDim;
    std::array<Complex, K * K> l{};
    const double s2 = s * s;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const Complex a = s2 * g.uu[i * K + j];
        const Complex num = a - g.tt[i * K + j];
        const Complex den(1.0 - a.real(), -a.imag());
        const double inv = 1.0 / (den.real() * den.real() + den.imag() * den.imag());
        // num / den = num * conj(den) / |den|^2
        l[i * K + j] = Complex(num.real() * den.real() + num.imag() * den.imag(),
                               num.imag() * den.real() - num.real() * den.imag()) * inv;
      }
    }
    for (std::size_t j = 0; j < n_; ++j) {
      double d = l[j * K + j].real();
      for (std::size_t k = 0; k < j; ++k) d -= std::norm(l[j * K + k]);
      if (!(d > 0.0)) return false;
      const double inv_root = 1.0 / std::sqrt(d);
      for (std::size_t i = j + 1; i < n_; ++i) {
        Complex v = l[i * K + j];
        for (std::size_t k = 0; k < j; ++k) v -= l[i * K + k] * std::conj(l[j * K + k]);
        l[i * K + j] = v * inv_root;
      }
    }
    return true;
  }

  // Smallest feasible scale in [lo, hi] for one coordinate; feasibility is
  // monotone in s, and hi is known to be feasible.
  [[nodiscard]] double boundary(const Gram& g, double lo, double hi) const {
    if (psd(g, lo)) return lo;
    while (hi - lo > 1e-14 * hi) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (psd(g, mid) ? hi : lo) = mid;
    }
    return hi;
  }

  [[nodiscard]] Evaluation operator()(const std::vector<double>& x) const {
    std::array<Complex, SmallHermitian::kMaxDim> u{};
    shape(x, u);
    double umax = 0.0;
    double lo = 0.0;
    double prod = 1.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double r = std::abs(u[i]);
      umax = std::max(umax, r);
      lo = std::max(lo, std::max(std::abs(p_.t1[i]), std::abs(p_.t2[i])) / r);
      prod *= r;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (std::abs(u[i] - u[j]) < kCollision * umax) return {};
      }
    }
    const double hi = (1.0 - 1e-12) / umax;
    if (lo >= hi) return {};
    Gram g1;
    Gram g2;
    gram(u, p_.t1, g1);
    gram(u, p_.t2, g2);
    if (!psd(g1, hi) || !psd(g2, hi)) return {};
    const double s1 = boundary(g1, lo, hi);
    const double s = boundary(g2, s1, hi);
    return {std::pow(s, static_cast<double>(n_)) * prod, s};
  }

 private:
  const Problem& p_;
  std::size_t n_;
};

struct RunResult {
  double value = kInfeasible;
  std::vector<double> x;
  double scale = 0.0;
};

std::mt19937_64 task_engine(std::uint64_t seed, const Problem& p, std::size_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), p.mask, p.choice,
                    static_cast<std::uint32_t>(restart)};
  return std::mt19937_64(seq);
}

RunResult simplex_search(const Problem& p, std::size_t restart, const OptimizerSettings& s) {
  const ShapeObjective f(p);
  const std::size_t d = f.dims();
  auto rng = task_engine(s.seed, p, restart);
  std::uniform_real_distribution<double> radius(-0.7, 0.7);
  std::uniform_real_distribution<double> angle(-kPi, kPi);

  RunResult out;
  std::vector<double> x0(d);
  Evaluation f0;
  for (int attempt = 0; attempt < 50 && f0.value >= kInfeasible; ++attempt) {
    for (std::size_t k = 0; k < d; k += 2) {
      x0[k] = radius(rng);
      x0[k + 1] = angle(rng);
    }
    f0 = f(x0);
  }
  if (f0.value >= kInfeasible) return out;

  // Dimension-adaptive coefficients (Gao and Han).
  const double dd = static_cast<double>(d);
  const double c_reflect = 1.0;
  const double c_expand = 1.0 + 2.0 / dd;
  const double c_contract = 0.75 - 0.5 / dd;
  const double c_shrink = 1.0 - 1.0 / dd;

  std::vector<std::vector<double>> simplex(d + 1, x0);
  std::vector<Evaluation> fv(d + 1, f0);
  for (std::size_t k = 0; k < d; ++k) {
    simplex[k + 1][k] += 0.5;
    fv[k + 1] = f(simplex[k + 1]);
  }
  std::vector<std::size_t> order(d + 1);
  std::vector<double> centroid(d), xr(d), xe(d), xc(d);
  auto point = [&](std::vector<double>& y, double t) {
    for (std::size_t k = 0; k < d; ++k) y[k] = centroid[k] + t * (simplex[order[d]][k] - centroid[k]);
  };
  for (int it = 0; it < s.max_iterations; ++it) {
    for (std::size_t i = 0; i <= d; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a].value < fv[b].value; });
    double size = 0.0;
    for (std::size_t i = 1; i <= d; ++i) {
      for (std::size_t k = 0; k < d; ++k) size = std::max(size, std::abs(simplex[order[i]][k] - simplex[order[0]][k]));
    }
    if (size < s.step_tolerance) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = 0; k < d; ++k) centroid[k] += simplex[order[i]][k] / dd;
    }
    const std::size_t worst = order[d];
    const double f_best = fv[order[0]].value;
    const double f_second = fv[order[d - 1]].value;
    const double f_worst = fv[worst].value;

    point(xr, -c_reflect);
    const auto fr = f(xr);
    if (fr.value < f_best) {
      point(xe, -c_reflect * c_expand);
      const auto fe = f(xe);
      if (fe.value < fr.value) {
        simplex[worst] = xe;
        fv[worst] = fe;
      } else {
        simplex[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr.value < f_second) {
      simplex[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    const bool outside = fr.value < f_worst;
    point(xc, outside ? -c_reflect * c_contract : c_contract);
    const auto fc = f(xc);
    if (fc.value < (outside ? fr.value : f_worst)) {
      simplex[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    const std::size_t best = order[0];
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < d; ++k) simplex[i][k] = simplex[best][k] + c_shrink * (simplex[i][k] - simplex[best][k]);
      fv[i] = f(simplex[i]);
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i <= d; ++i) {
    if (fv[i].value < fv[best].value) best = i;
  }
  out.value = fv[best].value;
  out.x = simplex[best];
  out.scale = fv[best].scale;
  return out;
}

std::vector<std::vector<Complex>> coordinate_targets(const PoleSet& poles, Complex base, std::size_t choices) {
  const CoverMap cover(poles.domain(), base);
  std::vector<std::vector<Complex>> out;
  for (const auto& a : poles.points()) {
    std::vector<Complex> t;
    if (std::abs(a - base) <= kPoleHitTol) {
      t.emplace_back(0.0, 0.0);
    } else {
      for (const auto& lift : cover.smallest_lifts(a, choices)) t.push_back(lift.node);
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Problem> enumerate_problems(const std::vector<std::vector<Complex>>& first,
                                        const std::vector<std::vector<Complex>>& second, std::size_t max_nodes) {
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t k = 0; k < first.size(); ++k) {
    for (std::size_t l = 0; l < second.size(); ++l) all.emplace_back(k, l);
  }
  std::vector<Problem> out;
  const std::uint32_t masks = 1u << all.size();
  for (std::uint32_t mask = 1; mask < masks; ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > max_nodes) continue;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::size_t> radix;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (mask & (1u << i)) {
        pairs.push_back(all[i]);
        radix.push_back(first[all[i].first].size());
        radix.push_back(second[all[i].second].size());
      }
    }
    std::size_t combos = 1;
    for (auto r : radix) combos *= r;
    for (std::size_t c = 0; c < combos; ++c) {
      Problem p;
      p.mask = mask;
      p.choice = static_cast<std::uint32_t>(c);
      p.pairs = pairs;
      std::size_t rest = c;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& f = first[pairs[i].first];
        const auto& g = second[pairs[i].second];
        p.t1.push_back(f[rest % f.size()]);
        rest /= f.size();
        p.t2.push_back(g[rest % g.size()]);
        rest /= g.size();
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

double distinct_target_product(const std::vector<Complex>& t) {
  double p = 1.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    bool repeat = false;
    for (std::size_t j = 0; j < i; ++j) repeat = repeat || t[j] == t[i];
    if (!repeat) p *= std::abs(t[i]);
  }
  return p;
}

PickVerdict verify(const std::vector<Complex>& nodes, const std::vector<Complex>& targets) {
  PickProblem p{{Complex(0.0)}, {Complex(0.0)}};
  p.nodes.insert(p.nodes.end(), nodes.begin(), nodes.end());
  p.targets.insert(p.targets.end(), targets.begin(), targets.end());
  return pick_feasible(p);
}

}  // namespace

void OptimizerSettings::validate() const {
  if (restarts < 1) throw DomainError("restarts must be at least 1");
  if (max_iterations < 1) throw DomainError("max_iterations must be at least 1");
  if (!(step_tolerance > 0.0)) throw DomainError("step tolerance must be positive");
  if (threads < 1) throw DomainError("threads must be at least 1");
  if (max_nodes < 1 || max_nodes + 1 > SmallHermitian::kMaxDim) throw DomainError("max_nodes must lie in [1, 7]");
  if (lift_choices < 1 || lift_choices > 8) throw DomainError("lift_choices must lie in [1, 8]");
}

OptimizerResult mixed_product_upper(const PoleSet& A, const PoleSet& B, Complex z, Complex w,
                                    const OptimizerSettings& settings) {
  settings.validate();
  A.domain().require_interior(z, "base point z");
  B.domain().require_interior(w, "base point w");
  if (A.size() * B.size() > kMaxPairs) throw DomainError("the optimizer supports at most 16 pole pairs");

  const auto first = coordinate_targets(A, z, settings.lift_choices);
  const auto second = coordinate_targets(B, w, settings.lift_choices);
  const auto problems = enumerate_problems(first, second, settings.max_nodes);

  OptimizerResult out;
  out.problems = problems.size();
  // Singletons have the closed form max(|t1|, |t2|) by the Schwarz lemma.
  double best_single = kInfeasible;
  std::size_t best_single_index = 0;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const auto& p = problems[i];
    if (p.pairs.size() != 1) continue;
    const double v = std::max(std::abs(p.t1[0]), std::abs(p.t2[0]));
    if (v < best_single) {
      best_single = v;
      best_single_index = i;
    }
  }
  // A subset cannot beat the disc bound prod |t| over the distinct targets
  // of either coordinate; those reaching the best singleton are skipped.
  std::vector<std::size_t> continuous;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const auto& p = problems[i];
    if (p.pairs.size() < 2) continue;
    if (std::max(distinct_target_product(p.t1), distinct_target_product(p.t2)) >= best_single) {
      ++out.pruned;
      continue;
    }
    continuous.push_back(i);
  }

  const std::size_t restarts = static_cast<std::size_t>(settings.restarts);
  std::vector<RunResult> runs(continuous.size() * restarts);
  detail::parallel_for(runs.size(), settings.threads, [&](std::size_t task) {
    runs[task] = simplex_search(problems[continuous[task / restarts]], task % restarts, settings);
  });

  // Lexicographic (value, task) minimum: independent of the schedule.
  std::size_t best_task = runs.size();
  for (std::size_t t = 0; t < runs.size(); ++t) {
    if (runs[t].value >= kInfeasible) {
      ++out.infeasible_runs;
      continue;
    }
    if (best_task == runs.size() || runs[t].value < runs[best_task].value) best_task = t;
  }

  NodeConfig cfg;
  if (best_task < runs.size() && runs[best_task].value < best_single) {
    const auto& p = problems[continuous[best_task / restarts]];
    const ShapeObjective f(p);
    std::array<Complex, SmallHermitian::kMaxDim> u{};
    f.shape(runs[best_task].x, u);
    cfg.subset = p.pairs;
    cfg.first_targets = p.t1;
    cfg.second_targets = p.t2;
    double s = runs[best_task].scale;
    for (int bump = 0; bump < 100; ++bump) {
      cfg.nodes.clear();
      for (std::size_t i = 0; i < p.pairs.size(); ++i) cfg.nodes.push_back(s * u[i]);
      const auto v1 = verify(cfg.nodes, p.t1);
      const auto v2 = verify(cfg.nodes, p.t2);
      out.first_min_eigenvalue = v1.min_eigenvalue;
      out.second_min_eigenvalue = v2.min_eigenvalue;
      if (v1.feasible && v2.feasible) break;
      s *= 1.0 + 1e-12;
    }
    out.best_restart = best_task % restarts;
  } else {
    const auto& p = problems[best_single_index];
    cfg.subset = p.pairs;
    cfg.first_targets = p.t1;
    cfg.second_targets = p.t2;
    cfg.nodes = {Complex(best_single, 0.0)};
    if (best_single > 0.0) {
      out.first_min_eigenvalue = verify(cfg.nodes, p.t1).min_eigenvalue;
      out.second_min_eigenvalue = verify(cfg.nodes, p.t2).min_eigenvalue;
    }
  }
  cfg.value = 1.0;
  for (const auto& n : cfg.nodes) cfg.value *= std::abs(n);
  out.best = cfg;
  out.value = cfg.value;
  if (!(out.first_min_eigenvalue >= -kPickFeasibilityTol && out.second_min_eigenvalue >= -kPickFeasibilityTol)) {
    throw NumericError("optimizer: best configuration failed Pick re-verification");
  }
  return out;
}

OptimizerResult bidisc_lempert(const PoleSet& A, const PoleSet& B, Complex z, Complex w,
                               const OptimizerSettings& settings) {
  if (A.domain().kind() != DomainKind::UnitDisc || B.domain().kind() != DomainKind::UnitDisc) {
    throw DomainError("bidisc_lempert needs pole sets in the unit disc");
  }
  return mixed_product_upper(A, B, z, w, settings);
}

}  // namespace lempert
