#pragma once

#include <array>

#include "cwgng/model.hpp"

namespace cwgng {

/// Auxiliary constants of the closed-form conditioned cost.
struct CostAuxiliaries {
  double C1;
  double C2;
  double R;  ///< nonnegative root of 1 - 4 C1 C2
};

/// Conditioned cost m -> C_{t,alpha}(m): the minimal path cost (static plus
/// dynamic) over trajectories that start at m and end at alpha at time t.
///
/// Magnetizations are clamped to [-1 + 1e-10, 1 - 1e-10] because the closed
/// form contains log(1 - alpha^2) and log(1 - m^2).
class ConditionedCost {
 public:
  static constexpr double kMargin = 1e-10;
  static constexpr double kDiscriminantTolerance = 1e-12;

  ConditionedCost(const ModelParams& p, double t, double alpha);

  const ModelParams& params() const noexcept { return p_; }
  double time() const noexcept { return t_; }
  double alpha() const noexcept { return alpha_; }
  const TimeFactors& factors() const noexcept { return tf_; }

  CostAuxiliaries aux(double m) const;

  /// Full cost C_{t,alpha}(m).
  double operator()(double m) const { return value(m); }
  double value(double m) const;

  /// C_{t,alpha}(m) - I_S(m): the action of the optimal path from m to alpha.
  double dynamic_part(double m) const;

 private:
  ModelParams p_;
  double t_;
  double alpha_;
  TimeFactors tf_;
  double one_minus_e4_;
};

/// Closed-form optimal path s -> phi(s) from m0 at s = 0 to alpha at s = t.
class Trajectory {
 public:
  Trajectory(double m0, double t, double alpha);

  double start() const noexcept { return m0_; }
  double end() const noexcept { return alpha_; }
  double duration() const noexcept { return t_; }

  double operator()(double s) const { return position(s); }
  double position(double s) const;
  double velocity(double s) const;

 private:
  double m0_;
  double t_;
  double alpha_;
  double one_minus_e4_;
};

Trajectory optimal_trajectory(const ConditionedCost& cc, double m);

struct ActionIntegral {
  double value;
  double error_estimate;
};

/// Adaptive Gauss-Kronrod integral of the Lagrangian along `traj`. Throws
/// QuadratureError when the error estimate stays above `abs_tol`.
ActionIntegral action_integral(const Trajectory& traj, double abs_tol = 1e-10);

/// Single-spin transition matrix of rate-1 flips, indexed [from][to] with
/// index 0 = spin +1 and 1 = spin -1.
using SpinKernel = std::array<std::array<double, 2>, 2>;
SpinKernel transition_kernel(double t);

struct SpecKernel {
  double gamma_plus;
  double gamma_minus;
};

/// Limiting single-spin conditional law at time t given final magnetization
/// alpha, when the optimal start m0 is unique. Depends on alpha only via m0.
SpecKernel spec_kernel(double t, double alpha, double m0, const ModelParams& p);

}  // namespace cwgng
