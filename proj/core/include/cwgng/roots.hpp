#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace cwgng {

/// Points lo + i (hi - lo) / n for i = 0..n, with both ends exact.
std::vector<double> uniform_grid(double lo, double hi, int n);

/// Sorted union of two sorted ranges.
std::vector<double> merge_sorted(std::span<const double> a, std::span<const double> b);

/// Bisection of a bracket with f(lo) and f(hi) of opposite signs, run until the
/// bracket cannot shrink any further or its width drops below `xtol`.
template <class F>
double bisect(F&& f, double lo, double hi, double flo, double xtol = 0.0) {
  const bool lo_positive = flo > 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= xtol) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct BracketedRoot {
  double x;
  /// +1 if f goes from negative to positive through x, -1 for the opposite,
  /// 0 if x is an exact zero of f without a sign change around it.
  int direction;
};

/// Scans f over the sorted points `xs` and refines every sign change by bisection.
/// Exact zeros at scan points are reported once; their direction is read off the
/// neighbouring samples.
template <class F>
std::vector<BracketedRoot> sign_change_roots(F&& f, std::span<const double> xs) {
  std::vector<BracketedRoot> out;
  if (xs.empty()) return out;
  std::vector<double> fx(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) fx[i] = f(xs[i]);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (fx[i] == 0.0) {
      const double left = i > 0 ? fx[i - 1] : 0.0;
      const double right = i + 1 < xs.size() ? fx[i + 1] : 0.0;
      int dir = 0;
      if (left < 0.0 && right > 0.0) dir = +1;
      if (left > 0.0 && right < 0.0) dir = -1;
      out.push_back({xs[i], dir});
      continue;
    }
    if (i + 1 < xs.size() && fx[i + 1] != 0.0 && (fx[i] > 0.0) != (fx[i + 1] > 0.0)) {
      const double r = bisect(f, xs[i], xs[i + 1], fx[i]);
      out.push_back({r, fx[i] < 0.0 ? +1 : -1});
    }
  }
  return out;
}

/// Golden-section search for a maximum of a unimodal function on [lo, hi].
template <class F>
double golden_section_max(F&& f, double lo, double hi, double xtol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > xtol) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
    if (d <= c) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace cwgng
