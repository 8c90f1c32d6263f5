#include "cwgng/overshoot.hpp"

#include <cmath>
#include <sstream>

#include "cwgng/errors.hpp"
#include "cwgng/roots.hpp"
#include "cwgng/stationary.hpp"

namespace cwgng {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::r1a:
      return "1a";
    case Regime::r1b:
      return "1b";
    case Regime::r1c:
      return "1c";
    case Regime::r1d:
      return "1d";
  }
  return "unknown";
}

double overshoot_phi(double m, const ModelParams& p, double alpha) {
  const double k = k_fn(m, p);
  return k * k - m * m + alpha * alpha;
}

namespace {

double sqrt_phi(double m, const ModelParams& p, double alpha) {
  return std::sqrt(std::max(0.0, overshoot_phi(m, p, alpha)));
}

constexpr double kPhiSlack = 1e-14;
constexpr double kSquareTie = 1e-15;

enum class Root { first, last };

std::optional<double> quadratic_time(double m, const ModelParams& p, double alpha, Root which) {
  const double phi = overshoot_phi(m, p, alpha);
  if (phi < -kPhiSlack) return std::nullopt;
  const double k = k_fn(m, p);
  const double mk = m * k;
  const double den = m * m - alpha * alpha;
  double x = 0.0;
  if (std::abs(den) > kSquareTie) {
    const double sign = which == Root::first ? 1.0 : -1.0;
    x = (mk + sign * std::abs(alpha) * sqrt_phi(m, p, alpha)) / den;
  } else {
    // m = +-alpha: one root of the quadratic in coth(2t) escapes to t = 0.
    const bool escapes = which == Root::first ? mk > 0.0 : mk < 0.0;
    if (escapes) return 0.0;
    x = (k * k + m * m) / (2.0 * mk);
  }
  if (!(x > 1.0) || !std::isfinite(x)) {
    if (std::isinf(x) && x > 0.0) return 0.0;
    return std::nullopt;
  }
  return 0.5 * acoth(x);
}

void check_window(const ModelParams& p, double alpha, double lo, double hi, Root which) {
  constexpr int kProbes = 9;
  for (int i = 1; i < kProbes; ++i) {
    const double m = lo + (hi - lo) * i / kProbes;
    const double den = m * m - alpha * alpha;
    if (std::abs(den) <= 1e-9) continue;
    const double eta = which == Root::first ? eta_first(m, p, alpha) : eta_last(m, p, alpha);
    const auto t = quadratic_time(m, p, alpha, which);
    const bool eta_ok = den > 0.0 ? eta > 0.0 : eta < 0.0;
    if (!eta_ok || !t || !(*t > 0.0)) {
      std::ostringstream os;
      os.precision(17);
      os << "overshoot_profile: positivity window check failed at m=" << m
         << (which == Root::first ? " (first time)" : " (last time)");
      throw SolverInvariantViolation(os.str());
    }
  }
}

OvershootProfile positive_overshoot(const ModelParams& p, double alpha) {
  OvershootProfile out;
  out.regime = Regime::r1a;
  out.m_inf = m_infinity(p);
  double z_plus = 1.0;
  for (double z : k_zeros(p)) {
    if (z > alpha) {
      z_plus = z;
      break;
    }
  }
  const double lo = std::max(alpha, out.m_inf);
  auto phi = [&](double m) { return overshoot_phi(m, p, alpha); };
  std::vector<double> xs = uniform_grid(lo, z_plus, StationarySolver::kDefaultIntervals);
  for (const auto& r : sign_change_roots(phi, xs)) {
    if (r.direction < 0) {
      out.m_R = r.x;
      break;
    }
  }
  if (!out.m_R) {
    throw SolverInvariantViolation("overshoot_profile: Phi has no root between max(alpha, m_inf) and z+");
  }
  const double m = *out.m_R;
  out.t_R = 0.5 * acoth(m * k_fn(m, p) / (m * m - alpha * alpha));
  check_window(p, alpha, alpha, m, Root::first);
  check_window(p, alpha, out.m_inf, m, Root::last);
  return out;
}

}  // namespace

double eta_first(double m, const ModelParams& p, double alpha) {
  return m * k_fn(m, p) + alpha * alpha - m * m + std::abs(alpha) * sqrt_phi(m, p, alpha);
}

double eta_last(double m, const ModelParams& p, double alpha) {
  return m * k_fn(m, p) + alpha * alpha - m * m - std::abs(alpha) * sqrt_phi(m, p, alpha);
}

std::optional<double> t_first(double m, const ModelParams& p, double alpha) {
  return quadratic_time(m, p, alpha, Root::first);
}

std::optional<double> t_last(double m, const ModelParams& p, double alpha) {
  return quadratic_time(m, p, alpha, Root::last);
}

OvershootProfile overshoot_profile(const ModelParams& p, double alpha) {
  if (!(std::abs(alpha) < 1.0)) throw DomainError("overshoot_profile: |alpha| must be < 1");
  const double ka = k_fn(alpha, p);
  if (std::abs(ka) <= 1e-12 || alpha == 0.0) {
    std::ostringstream os;
    os.precision(17);
    os << "overshoot_profile: boundary case alpha=" << alpha << ", k(alpha)=" << ka;
    throw Unclassifiable(os.str());
  }
  if (alpha > 0.0 && ka > 0.0) return positive_overshoot(p, alpha);
  if (alpha < 0.0 && ka < 0.0) {
    OvershootProfile mirrored = positive_overshoot(p.mirrored(), -alpha);
    OvershootProfile out;
    out.regime = Regime::r1d;
    out.m_R = -*mirrored.m_R;
    out.t_R = mirrored.t_R;
    out.m_inf = m_infinity(p);
    return out;
  }
  OvershootProfile out;
  out.regime = alpha > 0.0 ? Regime::r1b : Regime::r1c;
  out.m_inf = m_infinity(p);
  return out;
}

}  // namespace cwgng
