#pragma once

#include <vector>

namespace cwgng {

/// Coupling J > 0 and external field h of the Curie-Weiss Hamiltonian.
struct ModelParams {
  double J = 1.0;
  double h = 0.0;

  /// Validating constructor; throws DomainError unless J > 0 and h is finite.
  static ModelParams make(double J, double h);

  /// (J, h) -> (J, -h); paired with m -> -m and alpha -> -alpha this is a symmetry.
  ModelParams mirrored() const { return {J, -h}; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// A point (m, dm/ds) of the single-flip Lagrangian.
struct LagrangianPoint {
  double m = 0.0;
  double mdot = 0.0;
};

/// coth(2t), csch(2t) and e^{-2t}, evaluated without overflow for large t.
struct TimeFactors {
  double coth2t;
  double csch2t;
  double exp_m2t;
};

/// Throws DomainError for t <= 0 or non-finite t.
TimeFactors time_factors(double t);

// Closed-interval helpers. Anything dividing by 1 - m^2 clamps to this margin.
inline constexpr double kEndpointMargin = 1e-12;
double clamp_magnetization(double m, double margin = kEndpointMargin);

double mean_field_potential(double m, const ModelParams& p);

/// Binary entropy term, 0 log 0 = 0 at m = +-1.
double entropy(double m);

/// I_S(m) = mean_field_potential + entropy, without subtracting its infimum.
double static_rate(double m, const ModelParams& p);

/// Large-deviation Lagrangian of independent spin flips.
///
/// At m = +1 (resp. -1) the velocity has to point strictly inward, otherwise
/// the logarithm is undefined and DomainError is thrown.
double lagrangian(LagrangianPoint q);
inline double lagrangian(double m, double mdot) { return lagrangian({m, mdot}); }

double a_fn(double m, double J);
double b_fn(double m, double J);
double a_prime(double m, double J);
double b_prime(double m, double J);
double a_second(double m, double J);
double b_second(double m, double J);

double k_fn(double m, const ModelParams& p);
double k_prime(double m, const ModelParams& p);
double k_second(double m, const ModelParams& p);

/// A(m) = -a(m)/b(m); k(m) = 0 iff A(m) = tanh(2h). Checks b != 0.
double A_fn(double m, double J);

/// l_{t,alpha}(m) = m coth(2t) - alpha csch(2t).
double l_fn(double m, double t, double alpha);

/// Largest solution of tanh(J m + h) = m.
double m_infinity(const ModelParams& p);

/// All roots of k in (-1, 1), sorted increasingly.
std::vector<double> k_zeros(const ModelParams& p);

}  // namespace cwgng
