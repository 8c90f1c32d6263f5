#include "cwgng/tangency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cwgng/errors.hpp"
#include "cwgng/roots.hpp"
#include "cwgng/stationary.hpp"

namespace cwgng {

namespace {

constexpr int kScanIntervals = 4096;
constexpr int kBoundIntervals = 2048;
constexpr double kInf = std::numeric_limits<double>::infinity();

double numerator(double m, const ModelParams& p) { return m * k_prime(m, p) - k_fn(m, p); }

// F extended to the closure of its domain by the sign of its blow-up.
double f_extended(double m, const ModelParams& p) {
  const double kp = k_prime(m, p);
  if (kp <= 1.0) return numerator(m, p) >= 0.0 ? kInf : -kInf;
  return numerator(m, p) / std::sqrt((kp - 1.0) * (kp + 1.0));
}

std::vector<double> scan_grid(const ModelParams& p) {
  const std::vector<double> grid = uniform_grid(-1.0, 1.0, kScanIntervals);
  std::vector<double> inflections;
  for (const auto& r : sign_change_roots([&](double m) { return k_second(m, p); }, grid)) {
    inflections.push_back(r.x);
  }
  return merge_sorted(grid, inflections);
}

std::vector<double> slope_one_points(const ModelParams& p) {
  std::vector<double> out;
  for (const auto& r : sign_change_roots([&](double m) { return k_prime(m, p) - 1.0; }, scan_grid(p))) {
    out.push_back(r.x);
  }
  return out;
}

std::vector<double> points_in(const std::vector<double>& xs, double a, double b) {
  std::vector<double> out;
  for (double x : xs) {
    if (x > a && x < b) out.push_back(x);
  }
  return out;
}

struct Extremum {
  double m;
  double value;
};

// Maximum of sign * F over [lo, hi] intersected with the domain; nothing if
// the domain misses [lo, hi] or F is unbounded there.
std::optional<Extremum> extremum(const ModelParams& p, double lo, double hi, double sign) {
  for (double c : slope_one_points(p)) {
    if (c >= lo && c <= hi && sign * numerator(c, p) > 0.0) return std::nullopt;
  }
  auto f = [&](double m) { return sign * f_extended(m, p); };
  const std::vector<double> xs = uniform_grid(lo, hi, kBoundIntervals);
  std::size_t best = xs.size();
  double best_value = -kInf;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(k_prime(xs[i], p) > 1.0)) continue;
    const double v = f(xs[i]);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  if (best == xs.size()) return std::nullopt;
  double a = xs[best > 0 ? best - 1 : 0];
  double b = xs[std::min(best + 1, xs.size() - 1)];
  // Keep the bracket inside the domain.
  if (!(k_prime(a, p) > 1.0)) a = xs[best];
  if (!(k_prime(b, p) > 1.0)) b = xs[best];
  double m = golden_section_max(f, a, b, 1e-11);
  // Polish with the sign change of F' when the maximum is interior.
  auto fp = [&](double x) { return sign * tangency_F_prime(x, p); };
  if (a < b) {
    const double fa = fp(a);
    const double fb = fp(b);
    if (fa > 0.0 && fb < 0.0) m = bisect(fp, a, b, fa);
  }
  const double v = f(m);
  if (v < best_value) return Extremum{xs[best], sign * best_value};
  return Extremum{m, sign * v};
}

}  // namespace

double tangency_F(double m, const ModelParams& p) {
  const double kp = k_prime(m, p);
  if (!(kp > 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "tangency_F: k'(m) = " << kp << " <= 1 at m=" << m;
    throw DomainError(os.str());
  }
  return numerator(m, p) / std::sqrt((kp - 1.0) * (kp + 1.0));
}

double tangency_F_prime(double m, const ModelParams& p) {
  const double k = k_fn(m, p);
  const double kp = k_prime(m, p);
  if (!(kp > 1.0)) throw DomainError("tangency_F_prime: k'(m) <= 1");
  const double q = (kp - 1.0) * (kp + 1.0);
  return k_second(m, p) * (k * kp - m) / (q * std::sqrt(q));
}

double tangency_time(double m, const ModelParams& p) { return 0.5 * acoth(k_prime(m, p)); }

std::vector<std::pair<double, double>> tangency_domain(const ModelParams& p) {
  std::vector<double> ends{-1.0};
  for (double c : slope_one_points(p)) ends.push_back(c);
  ends.push_back(1.0);
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
    const double mid = 0.5 * (ends[i] + ends[i + 1]);
    if (k_prime(mid, p) > 1.0) out.emplace_back(ends[i], ends[i + 1]);
  }
  return out;
}

std::vector<double> tangency_critical_points(const ModelParams& p) {
  const std::vector<double> grid = scan_grid(p);
  std::vector<double> out;
  for (const auto& r : sign_change_roots([&](double m) { return k_second(m, p); }, grid)) {
    out.push_back(r.x);
  }
  for (const auto& r :
       sign_change_roots([&](double m) { return k_fn(m, p) * k_prime(m, p) - m; }, grid)) {
    out.push_back(r.x);
  }
  std::erase_if(out, [&](double m) { return !(k_prime(m, p) > 1.0); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TangencyBounds tangency_bounds(const ModelParams& p) {
  TangencyBounds out;
  if (const auto up = extremum(p, 0.0, 1.0, +1.0)) {
    out.U_B = up->value;
    out.m_U = up->m;
  }
  if (const auto down = extremum(p, -1.0, 0.0, -1.0)) {
    out.L_B = down->value;
    out.m_L = down->m;
  }
  return out;
}

std::vector<TangencyPoint> tangency_points(const ModelParams& p, double alpha) {
  const std::vector<double> grid = uniform_grid(-1.0, 1.0, kScanIntervals);
  const std::vector<double> crit = tangency_critical_points(p);
  auto f = [&](double m) { return f_extended(m, p) - alpha; };
  std::vector<double> roots;
  for (const auto& [a, b] : tangency_domain(p)) {
    std::vector<double> xs{a};
    for (double x : merge_sorted(points_in(grid, a, b), points_in(crit, a, b))) xs.push_back(x);
    xs.push_back(b);
    for (const auto& r : sign_change_roots(f, xs)) {
      if (k_prime(r.x, p) > 1.0) roots.push_back(r.x);
    }
  }
  for (double c : crit) {
    if (std::abs(f(c)) <= 1e-9) {
      const bool known = std::any_of(roots.begin(), roots.end(),
                                     [&](double r) { return std::abs(r - c) <= 1e-9; });
      if (!known) roots.push_back(c);
    }
  }
  std::vector<TangencyPoint> out;
  for (double m : roots) out.push_back({m, tangency_time(m, p)});
  std::sort(out.begin(), out.end(),
            [](const TangencyPoint& x, const TangencyPoint& y) { return x.t_tilde < y.t_tilde; });
  return out;
}

std::vector<double> fold_times(const ModelParams& p, double alpha) {
  std::vector<double> ts;
  for (const auto& tp : tangency_points(p, alpha)) ts.push_back(tp.t_tilde);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(),
                       [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, b); }),
           ts.end());
  return ts;
}

}  // namespace cwgng
