#pragma once

#include <optional>

#include "cwgng/model.hpp"

namespace cwgng {

/// The four monotonicity regimes of t -> m_hat(t, alpha), named by the signs
/// of alpha and k(alpha): 1a (+,+), 1b (+,-), 1c (-,+), 1d (-,-).
enum class Regime { r1a, r1b, r1c, r1d };

const char* to_string(Regime r);

struct OvershootProfile {
  Regime regime = Regime::r1b;
  /// Apex of the overshoot (1a) or undershoot (1d), where Phi vanishes.
  std::optional<double> m_R;
  std::optional<double> t_R;
  double m_inf = 0.0;
};

/// Phi(m) = k(m)^2 - m^2 + alpha^2.
double overshoot_phi(double m, const ModelParams& p, double alpha);

/// eta_F and eta_L: sign conditions for positivity of t_F and t_L.
double eta_first(double m, const ModelParams& p, double alpha);
double eta_last(double m, const ModelParams& p, double alpha);

/// Positive times at which m is stationary for C_{t,+-alpha}: the "first" and
/// "last" roots of the quadratic in coth(2t). Empty when no positive time exists.
std::optional<double> t_first(double m, const ModelParams& p, double alpha);
std::optional<double> t_last(double m, const ModelParams& p, double alpha);

/// Throws Unclassifiable if |k(alpha)| <= 1e-12 and DomainError for |alpha| >= 1.
OvershootProfile overshoot_profile(const ModelParams& p, double alpha);

}  // namespace cwgng
