#pragma once

// Lempert function of the bidisc at (0, 0) for a product pole set, by a
// direct search that shares no code with the library optimizer:
//  - feasibility by the Schur algorithm (Nevanlinna recursion), not by a
//    Pick matrix factorization;
//  - nodes lambda = s * u with u_0 = 1; the minimal feasible s for a shape u
//    is found by bisection (scaling outward keeps a problem feasible);
//  - shapes come from a Halton point set; the best ones are polished by a
//    restarted textbook simplex search.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace lempert::testing {

using C = std::complex<double>;

/// Is there a holomorphic self-map of the disc with f(0) = 0, f(x_i) = y_i?
inline bool schur_feasible(std::vector<C> x, std::vector<C> y) {
  // f(0) = 0 is divided out first: g = f / z, g(x_i) = y_i / x_i.
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) == 0.0) return false;
    y[i] /= x[i];
  }
  while (!x.empty()) {
    const C x0 = x.back();
    const C y0 = y.back();
    x.pop_back();
    y.pop_back();
    if (!(std::abs(y0) < 1.0)) {
      // |g(x0)| = 1 forces a unimodular constant; the search never needs it.
      return std::abs(y0) == 1.0 && std::all_of(y.begin(), y.end(), [&](C v) { return v == y0; });
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      const C num = (y[i] - y0) / (1.0 - std::conj(y0) * y[i]);
      const C den = (x[i] - x0) / (1.0 - std::conj(x0) * x[i]);
      if (std::abs(den) == 0.0) return false;
      y[i] = num / den;
    }
  }
  return true;
}

struct BidiscOracle {
  std::vector<C> first;   // first coordinates of the poles
  std::vector<C> second;  // second coordinates of the poles

  // Pole pairs of one subset and their coordinates.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<C> t1, t2;

  void add(std::pair<std::size_t, std::size_t> p) {
    pairs.push_back(p);
    t1.push_back(first[p.first]);
    t2.push_back(second[p.second]);
  }

  bool feasible(const std::vector<C>& nodes) const { return schur_feasible(nodes, t1) && schur_feasible(nodes, t2); }

  // Product of node moduli at the smallest feasible scale, or 2 if none.
  double value(const std::vector<double>& x) const {
    const std::size_t n = pairs.size();
    std::vector<C> u(n, C(1.0, 0.0));
    double umax = 1.0;
    double prod = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
      u[i] = std::polar(std::exp(x[2 * i - 2]), x[2 * i - 1]);
      umax = std::max(umax, std::abs(u[i]));
      prod *= std::abs(u[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (std::abs(u[i] - u[j]) < 1e-6 * umax) return 2.0;
      }
    }
    auto at = [&](double s) {
      std::vector<C> nodes(n);
      for (std::size_t i = 0; i < n; ++i) nodes[i] = s * u[i];
      return feasible(nodes);
    };
    double hi = (1.0 - 1e-13) / umax;
    if (!at(hi)) return 2.0;
    // |lambda_i| >= |t_i| is necessary.
    double lo = 0.0;
    for (std::size_t i = 0; i < n; ++i) lo = std::max({lo, std::abs(t1[i]) / std::abs(u[i]), std::abs(t2[i]) / std::abs(u[i])});
    if (lo >= hi) return 2.0;
    while (hi - lo > 1e-14 * hi) {
      const double mid = 0.5 * (lo + hi);
      (at(mid) ? hi : lo) = mid;
    }
    return std::pow(hi, static_cast<double>(n)) * prod;
  }
};

inline double halton(std::uint32_t index, std::uint32_t base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

// Textbook Nelder-Mead (coefficients 1, 2, 1/2, 1/2), restarted from its own
// result with a fresh simplex until a restart no longer helps.
inline double simplex_polish(const BidiscOracle& o, std::vector<double> x, double fx) {
  const std::size_t d = x.size();
  for (int round = 0; round < 20; ++round) {
    std::vector<std::vector<double>> p(d + 1, x);
    std::vector<double> f(d + 1, fx);
    for (std::size_t k = 0; k < d; ++k) {
      p[k + 1][k] += 0.05;
      f[k + 1] = o.value(p[k + 1]);
    }
    for (int it = 0; it < 5000; ++it) {
      std::vector<std::size_t> idx(d + 1);
      for (std::size_t i = 0; i <= d; ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
      double width = 0.0;
      for (std::size_t i = 1; i <= d; ++i) {
        for (std::size_t k = 0; k < d; ++k) width = std::max(width, std::abs(p[idx[i]][k] - p[idx[0]][k]));
      }
      if (width < 1e-10) break;
      std::vector<double> c(d, 0.0);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) c[k] += p[idx[i]][k] / static_cast<double>(d);
      }
      const std::size_t h = idx[d];
      auto along = [&](double t) {
        std::vector<double> y(d);
        for (std::size_t k = 0; k < d; ++k) y[k] = c[k] + t * (p[h][k] - c[k]);
        return y;
      };
      const auto r = along(-1.0);
      const double fr = o.value(r);
      if (fr < f[idx[0]]) {
        const auto e = along(-2.0);
        const double fe = o.value(e);
        if (fe < fr) {
          p[h] = e;
          f[h] = fe;
        } else {
          p[h] = r;
          f[h] = fr;
        }
      } else if (fr < f[idx[d - 1]]) {
        p[h] = r;
        f[h] = fr;
      } else {
        const auto k = fr < f[h] ? along(-0.5) : along(0.5);
        const double fk = o.value(k);
        if (fk < std::min(fr, f[h])) {
          p[h] = k;
          f[h] = fk;
        } else {
          for (std::size_t i = 1; i <= d; ++i) {
            for (std::size_t j = 0; j < d; ++j) p[idx[i]][j] = 0.5 * (p[idx[i]][j] + p[idx[0]][j]);
            f[idx[i]] = o.value(p[idx[i]]);
          }
        }
      }
    }
    const auto best = static_cast<std::size_t>(std::min_element(f.begin(), f.end()) - f.begin());
    const bool improved = f[best] < fx - 1e-12;
    x = p[best];
    fx = f[best];
    if (!improved) break;
  }
  return fx;
}

/// Lempert function of the bidisc at (0, 0) with poles first x second,
/// minimized over all nonempty subsets of pole pairs.
inline double bidisc_oracle(const std::vector<C>& first, const std::vector<C>& second, std::uint32_t samples = 4000,
                            std::size_t polished = 40) {
  static constexpr std::uint32_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t k = 0; k < first.size(); ++k) {
    for (std::size_t l = 0; l < second.size(); ++l) all.emplace_back(k, l);
  }
  // Feasibility needs |lambda_i| >= |t_i|, so the modulus ratios lie in
  // (min |t|, 1 / min |t|).
  double tmin = 1.0;
  for (const auto& t : first) tmin = std::min(tmin, std::abs(t));
  for (const auto& t : second) tmin = std::min(tmin, std::abs(t));
  const double radius = -std::log(tmin);
  double best = 2.0;
  for (std::uint32_t mask = 1; mask < (1u << all.size()); ++mask) {
    BidiscOracle o{first, second, {}, {}, {}};
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (mask & (1u << i)) o.add(all[i]);
    }
    const std::size_t d = 2 * (o.pairs.size() - 1);
    if (d == 0) {
      best = std::min(best, o.value({}));
      continue;
    }
    std::vector<std::pair<double, std::vector<double>>> pool;
    for (std::uint32_t i = 1; i <= samples; ++i) {
      std::vector<double> x(d);
      for (std::size_t k = 0; k < d; ++k) {
        const double h = halton(i, primes[k]);
        x[k] = k % 2 == 0 ? -radius + 2.0 * radius * h : -M_PI + 2.0 * M_PI * h;
      }
      const double v = o.value(x);
      if (v < 2.0) pool.emplace_back(v, std::move(x));
    }
    std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < std::min(polished, pool.size()); ++i) {
      best = std::min(best, simplex_polish(o, pool[i].second, pool[i].first));
    }
  }
  return best;
}

}  // namespace lempert::testing
