#pragma once

// Independent reference computations for the tests. Nothing here calls the
// closed-form cost: the dynamic part comes from the two-time contraction of
// independent spin flips, minimisers from dense grids.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using Real = long double;

inline Real kl(Real x, Real p) {
  Real r = 0;
  if (x > 0) r += x * std::log(x / p);
  if (x < 1) r += (1 - x) * std::log((1 - x) / (1 - p));
  return r;
}

/// Minimal action from m to alpha in time t: a fraction (1+m)/2 of + spins
/// each stays + with prob (1 + e^{-2t})/2, the rest become + with prob
/// (1 - e^{-2t})/2, and the rate of the sum follows from one Lagrange multiplier.
inline double contraction_rate(double m, double t, double alpha) {
  const Real a = (1 + Real(m)) / 2, b = (1 - Real(m)) / 2;
  const Real e = std::exp(-2 * Real(t));
  const Real p = (1 + e) / 2, q = -std::expm1(-2 * Real(t)) / 2;
  const Real c = (1 + Real(alpha)) / 2;
  auto sig = [](Real z) { return 1 / (1 + std::exp(-z)); };
  const Real lp = std::log(p / (1 - p)), lq = std::log(q / (1 - q));
  Real lo = -300, hi = 300;
  for (int i = 0; i < 200; ++i) {
    const Real mid = (lo + hi) / 2;
    if (a * sig(lp + mid) + b * sig(lq + mid) > c) hi = mid; else lo = mid;
  }
  const Real lam = (lo + hi) / 2;
  Real r = 0;
  if (a > 0) r += a * kl(sig(lp + lam), p);
  if (b > 0) r += b * kl(sig(lq + lam), q);
  return static_cast<double>(r);
}

inline double static_rate(double m, double J, double h) {
  Real r = -Real(J) * m * m / 2 - Real(h) * m;
  if (m > -1) r += (1 + Real(m)) / 2 * std::log1p(Real(m));
  if (m < 1) r += (1 - Real(m)) / 2 * std::log1p(-Real(m));
  return static_cast<double>(r);
}

inline double cost(double m, double J, double h, double t, double alpha) {
  return static_rate(m, J, h) + contraction_rate(m, t, alpha);
}

/// Golden-section minimum of f on [lo, hi].
inline double golden_min(const std::function<double(double)>& f, double lo, double hi, int iters = 120) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && d > c; ++i) {
    if (fc < fd) {
      hi = d, d = c, fd = fc, c = hi - g * (hi - lo), fc = f(c);
    } else {
      lo = c, c = d, fc = fd, d = lo + g * (hi - lo), fd = f(d);
    }
  }
  return (lo + hi) / 2;
}

struct GridMin {
  double m;
  double cost;
};

/// Local minima of the reference cost found on a uniform grid and polished.
inline std::vector<GridMin> grid_minima(double J, double h, double t, double alpha, int n = 2000) {
  auto f = [&](double m) { return cost(m, J, h, t, alpha); };
  const double lim = 1 - 1e-12;
  std::vector<double> xs(n + 1), fs(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = -lim + 2 * lim * i / n;
    fs[i] = f(xs[i]);
  }
  std::vector<GridMin> out;
  for (int i = 0; i <= n; ++i) {
    const bool left = i == 0 || fs[i] <= fs[i - 1];
    const bool right = i == n || fs[i] <= fs[i + 1];
    if (!(left && right)) continue;
    const double m = golden_min(f, xs[std::max(i - 1, 0)], xs[std::min(i + 1, n)]);
    out.push_back({m, f(m)});
  }
  return out;
}

inline GridMin grid_global_min(double J, double h, double t, double alpha, int n = 2000) {
  auto mins = grid_minima(J, h, t, alpha, n);
  return *std::min_element(mins.begin(), mins.end(), [](auto& a, auto& b) { return a.cost < b.cost; });
}

/// Deterministic parameter draws for property tests.
class Draws {
 public:
  explicit Draws(unsigned seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
