#include "cwgng/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cwgng/errors.hpp"
#include "cwgng/roots.hpp"

namespace cwgng {

namespace {

constexpr int kScanIntervals = 4096;

std::vector<double> roots_only(const std::vector<BracketedRoot>& rs) {
  std::vector<double> xs;
  xs.reserve(rs.size());
  for (const auto& r : rs) xs.push_back(r.x);
  return xs;
}

}  // namespace

ModelParams ModelParams::make(double J, double h) {
  if (!(J > 0.0) || !std::isfinite(J)) {
    std::ostringstream os;
    os << "coupling J must be finite and > 0, got " << J;
    throw DomainError(os.str());
  }
  if (!std::isfinite(h)) throw DomainError("field h must be finite");
  return {J, h};
}

TimeFactors time_factors(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    std::ostringstream os;
    os << "time must be finite and > 0, got " << t;
    throw DomainError(os.str());
  }
  const double e2 = std::exp(-2.0 * t);
  const double one_minus_e4 = -std::expm1(-4.0 * t);
  return {(1.0 + e2 * e2) / one_minus_e4, 2.0 * e2 / one_minus_e4, e2};
}

double clamp_magnetization(double m, double margin) {
  return std::clamp(m, -1.0 + margin, 1.0 - margin);
}

double mean_field_potential(double m, const ModelParams& p) {
  return -0.5 * p.J * m * m - p.h * m;
}

double entropy(double m) {
  if (m < -1.0 || m > 1.0) throw DomainError("entropy: |m| > 1");
  const double up = m < 1.0 ? 0.5 * (1.0 - m) * std::log1p(-m) : 0.0;
  const double down = m > -1.0 ? 0.5 * (1.0 + m) * std::log1p(m) : 0.0;
  return up + down;
}

double static_rate(double m, const ModelParams& p) {
  return mean_field_potential(m, p) + entropy(m);
}

double lagrangian(LagrangianPoint q) {
  const double m = q.m;
  const double v = q.mdot;
  if (m < -1.0 || m > 1.0) throw DomainError("lagrangian: |m| > 1");
  const double root = std::sqrt(4.0 * (1.0 - m * m) + v * v);
  // (root + v) / (2 (1 - m)) rewritten as 2 (1 + m) / (root - v) for v < 0.
  double log_arg;
  if (v < 0.0) {
    log_arg = 2.0 * (1.0 + m) / (root - v);
  } else if (m < 1.0) {
    log_arg = (root + v) / (2.0 * (1.0 - m));
  } else {
    log_arg = 0.0;
  }
  if (v == 0.0) {
    if (m == 1.0 || m == -1.0) throw DomainError("lagrangian: zero velocity on the boundary");
    return 1.0 - 0.5 * root;
  }
  if (!(log_arg > 0.0) || !std::isfinite(log_arg)) {
    throw DomainError("lagrangian: velocity points outward at the boundary");
  }
  return 1.0 - 0.5 * root + 0.5 * v * std::log(log_arg);
}

double a_fn(double m, double J) {
  const double x = 2.0 * J * m;
  return std::sinh(x) - m * std::cosh(x);
}

double b_fn(double m, double J) {
  const double x = 2.0 * J * m;
  return std::cosh(x) - m * std::sinh(x);
}

double a_prime(double m, double J) {
  const double x = 2.0 * J * m;
  return (2.0 * J - 1.0) * std::cosh(x) - 2.0 * J * m * std::sinh(x);
}

double b_prime(double m, double J) {
  const double x = 2.0 * J * m;
  return (2.0 * J - 1.0) * std::sinh(x) - 2.0 * J * m * std::cosh(x);
}

double a_second(double m, double J) {
  const double x = 2.0 * J * m;
  return 4.0 * J * (J - 1.0) * std::sinh(x) - 4.0 * J * J * m * std::cosh(x);
}

double b_second(double m, double J) {
  const double x = 2.0 * J * m;
  return 4.0 * J * (J - 1.0) * std::cosh(x) - 4.0 * J * J * m * std::sinh(x);
}

double k_fn(double m, const ModelParams& p) {
  return a_fn(m, p.J) * std::cosh(2.0 * p.h) + b_fn(m, p.J) * std::sinh(2.0 * p.h);
}

double k_prime(double m, const ModelParams& p) {
  return a_prime(m, p.J) * std::cosh(2.0 * p.h) + b_prime(m, p.J) * std::sinh(2.0 * p.h);
}

double k_second(double m, const ModelParams& p) {
  return a_second(m, p.J) * std::cosh(2.0 * p.h) + b_second(m, p.J) * std::sinh(2.0 * p.h);
}

double A_fn(double m, double J) {
  const double b = b_fn(m, J);
  // cosh(x) - m sinh(x) >= exp(-|x|) on [-1, 1]; anything smaller is a caller bug.
  if (!(b > 0.0)) throw SolverInvariantViolation("A_fn: b(m) is not positive");
  return -a_fn(m, J) / b;
}

double l_fn(double m, double t, double alpha) {
  const TimeFactors tf = time_factors(t);
  return m * tf.coth2t - alpha * tf.csch2t;
}

double m_infinity(const ModelParams& p) {
  auto f = [&](double m) { return std::tanh(p.J * m + p.h) - m; };
  std::vector<double> xs = uniform_grid(-1.0, 1.0, kScanIntervals);
  // f' = J sech^2(J m + h) - 1 vanishes where J m + h = +-acosh(sqrt(J)).
  if (p.J > 1.0) {
    const double u = std::acosh(std::sqrt(p.J));
    std::vector<double> extra;
    for (double s : {-u, u}) {
      const double m = (s - p.h) / p.J;
      if (m > -1.0 && m < 1.0) extra.push_back(m);
    }
    std::sort(extra.begin(), extra.end());
    xs = merge_sorted(xs, extra);
  }
  const auto roots = sign_change_roots(f, xs);
  if (roots.empty()) throw SolverInvariantViolation("m_infinity: no fixed point of tanh found");
  return roots.back().x;
}

std::vector<double> k_zeros(const ModelParams& p) {
  auto kf = [&](double m) { return k_fn(m, p); };
  auto k1 = [&](double m) { return k_prime(m, p); };
  auto k2 = [&](double m) { return k_second(m, p); };
  const std::vector<double> grid = uniform_grid(-1.0, 1.0, kScanIntervals);
  const std::vector<double> inflections = roots_only(sign_change_roots(k2, grid));
  const std::vector<double> extrema =
      roots_only(sign_change_roots(k1, merge_sorted(grid, inflections)));
  std::vector<double> out;
  for (const auto& r : sign_change_roots(kf, merge_sorted(grid, extrema))) {
    if (r.x > -1.0 && r.x < 1.0) out.push_back(r.x);
  }
  return out;
}

}  // namespace cwgng
