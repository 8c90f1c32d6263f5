#include "cwgng/cost.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>
#include <string_view>

#include "cwgng/errors.hpp"

namespace cwgng {

namespace {

double checked_log(double x, std::string_view term, double m, double t, double alpha) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os.precision(17);
    os << "cost: non-positive argument in " << term << " (m=" << m << ", t=" << t
       << ", alpha=" << alpha << ", value=" << x << ")";
    throw DomainError(os.str());
  }
  return std::log(x);
}

// (R - u) / (1 - x) with R = sqrt(1 - 4 C1 C2). The pairs (u, x) used below
// satisfy R^2 - u^2 = 1 - x^2, so for u > 0 the ratio equals (1 + x) / (R + u).
double shifted_ratio(double R, double u, double x) {
  if (u <= 0.0) return (R - u) / (1.0 - x);
  return (1.0 + x) / (R + u);
}

// (1 + R - x (x + u)) / (1 - x^2) for the same pairs; R^2 - x^2 u^2 = (1 - x^2)(1 + u^2).
double endpoint_ratio(double R, double u, double x) {
  if (x * u <= 0.0) return (1.0 + R - x * (x + u)) / ((1.0 - x) * (1.0 + x));
  return 1.0 + (1.0 + u * u) / (R + x * u);
}

}  // namespace

ConditionedCost::ConditionedCost(const ModelParams& p, double t, double alpha)
    : p_(p), t_(t), alpha_(clamp_magnetization(alpha, kMargin)), tf_(time_factors(t)),
      one_minus_e4_(-std::expm1(-4.0 * t)) {
  if (!(std::abs(alpha) <= 1.0)) throw DomainError("cost: alpha must satisfy |alpha| <= 1");
}

CostAuxiliaries ConditionedCost::aux(double m) const {
  m = clamp_magnetization(m, kMargin);
  const double e = tf_.exp_m2t;
  // C1 = (m e^{2t} - alpha) / (e^{2t} - e^{-2t}) with numerator and denominator
  // divided by e^{2t}; same for C2.
  const double C1 = (m - alpha_ * e) / one_minus_e4_;
  const double C2 = (alpha_ * e - m * e * e) / one_minus_e4_;
  double disc = 1.0 - 4.0 * C1 * C2;
  if (disc < 0.0) {
    if (disc < -kDiscriminantTolerance) {
      std::ostringstream os;
      os.precision(17);
      os << "cost: 1 - 4 C1 C2 = " << disc << " < 0 (m=" << m << ", t=" << t_
         << ", alpha=" << alpha_ << ")";
      throw NegativeDiscriminant(os.str());
    }
    disc = 0.0;
  }
  return {C1, C2, std::sqrt(disc)};
}

double ConditionedCost::dynamic_part(double m) const {
  m = clamp_magnetization(m, kMargin);
  const double a = alpha_;
  const double e = tf_.exp_m2t;
  const CostAuxiliaries x = aux(m);
  const double C1 = x.C1;
  const double C2 = x.C2;
  const double R = x.R;
  const double P = 1.0 + R;
  const double C1e = (m * e - a * e * e) / one_minus_e4_;  // C1 e^{-2t}
  const double C2E = (a - m * e) / one_minus_e4_;          // C2 e^{2t}

  // The two factors 1 - R - 2 C1 (.) of the bracket share a factor 2 C1 that
  // cancels; after cancelling, the bracket equals
  //   e^{-2t} [e^{-2t} P - 2 alpha C2] / [P - 2 m C2] * [P - 2 C1 m] / [P - 2 C1 alpha e^{-2t}]
  // which has no subtractive cancellation when 4 C1 C2 is small.
  auto lg = [&](double v, std::string_view term) { return checked_log(v, term, m, t_, a); };
  const double bracket = lg(e * P - 2.0 * a * C2, "bracket numerator (alpha side)") -
                         lg(P - 2.0 * m * C2, "bracket denominator (m side)");
  // log[(1 + R - 2 C1 m) / (1 - m^2)] - log[(1 + R - 2 C1 alpha e^{-2t}) / (1 - alpha^2)]
  const double ends = lg(endpoint_ratio(R, C1 - C2, m), "(1 + R - 2 C1 m)/(1 - m^2)") -
                      lg(endpoint_ratio(R, C1e - C2E, a), "(1 + R - 2 C1 alpha e^{-2t})/(1 - alpha^2)");
  // C1 + C2 = m and C1 e^{-2t} + C2 e^{2t} = alpha.
  const double alpha_term = a * lg(shifted_ratio(R, C1e - C2E, a), "alpha log term");
  const double m_term = m * lg(shifted_ratio(R, C1 - C2, m), "m log term");
  return 0.25 * (2.0 * t_ + ends + bracket + 2.0 * (alpha_term - m_term));
}

double ConditionedCost::value(double m) const {
  m = clamp_magnetization(m, kMargin);
  return static_rate(m, p_) + dynamic_part(m);
}

Trajectory::Trajectory(double m0, double t, double alpha)
    : m0_(m0), t_(t), alpha_(alpha), one_minus_e4_(-std::expm1(-4.0 * t)) {
  if (!(t > 0.0)) throw DomainError("trajectory: duration must be > 0");
}

double Trajectory::position(double s) const {
  if (s <= 0.0) return m0_;
  if (s >= t_) return alpha_;
  // sinh(2(t-s))/sinh(2t) and sinh(2s)/sinh(2t) in decaying exponentials.
  const double w_start = std::exp(-2.0 * s) * (-std::expm1(-4.0 * (t_ - s))) / one_minus_e4_;
  const double w_end = std::exp(-2.0 * (t_ - s)) * (-std::expm1(-4.0 * s)) / one_minus_e4_;
  return m0_ * w_start + alpha_ * w_end;
}

double Trajectory::velocity(double s) const {
  s = std::clamp(s, 0.0, t_);
  // 2 csch(2t) {alpha cosh(2s) - m cosh(2(t-s))}
  const double c_end = std::exp(-2.0 * (t_ - s)) * (1.0 + std::exp(-4.0 * s)) / one_minus_e4_;
  const double c_start = std::exp(-2.0 * s) * (1.0 + std::exp(-4.0 * (t_ - s))) / one_minus_e4_;
  return 2.0 * (alpha_ * c_end - m0_ * c_start);
}

Trajectory optimal_trajectory(const ConditionedCost& cc, double m) {
  return Trajectory(clamp_magnetization(m, ConditionedCost::kMargin), cc.time(), cc.alpha());
}

ActionIntegral action_integral(const Trajectory& traj, double abs_tol) {
  auto integrand = [&](double s) {
    const double m = std::clamp(traj.position(s), -1.0, 1.0);
    return lagrangian(m, traj.velocity(s));
  };
  double err = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, traj.duration(), 15, 1e-12, &err, &l1);
  if (!(err <= abs_tol) || !std::isfinite(value)) {
    std::ostringstream os;
    os << "action_integral: error estimate " << err << " above tolerance " << abs_tol;
    throw QuadratureError(os.str(), err);
  }
  return {value, err};
}

SpinKernel transition_kernel(double t) {
  if (!(t >= 0.0)) throw DomainError("transition_kernel: t must be >= 0");
  // e^{-t} cosh t and e^{-t} sinh t.
  const double e = std::exp(-2.0 * t);
  const double stay = 0.5 * (1.0 + e);
  const double flip = 0.5 * (1.0 - e);
  return {{{stay, flip}, {flip, stay}}};
}

SpecKernel spec_kernel(double t, double /*alpha*/, double m0, const ModelParams& p) {
  const SpinKernel pt = transition_kernel(t);
  const double u = p.J * m0 + p.h;
  // Weights e^{x u} rescaled by e^{-|u|} to stay finite.
  const double w_plus = std::exp(u - std::abs(u));
  const double w_minus = std::exp(-u - std::abs(u));
  const double num = w_plus * pt[0][0] + w_minus * pt[1][0];
  const double den = w_plus * (pt[0][0] + pt[0][1]) + w_minus * (pt[1][0] + pt[1][1]);
  const double gp = num / den;
  return {gp, 1.0 - gp};
}

}  // namespace cwgng
