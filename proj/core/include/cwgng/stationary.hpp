#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cwgng/cost.hpp"
#include "cwgng/model.hpp"

namespace cwgng {

enum class PointKind { local_min, local_max, degenerate };

const char* to_string(PointKind k);

/// Solution of k(m) = l_{t,alpha}(m), i.e. a critical point of C_{t,alpha}.
struct StationaryPoint {
  double m = 0.0;
  double cost = 0.0;
  PointKind kind = PointKind::degenerate;
  /// Sign change of k - l through m: -1 (+ to -, a minimum of the cost),
  /// +1 (- to +, a maximum) or 0 (touching zero).
  int direction = 0;
  /// k'(m) - coth(2t); zero at a tangency.
  double slope_gap = 0.0;

  /// Local minimum of the cost, including degenerate points that still have
  /// the minimum orientation.
  bool minimizing() const { return direction < 0 || kind == PointKind::local_min; }
};

struct Minimum {
  double m;
  double cost;
};

struct MinimizerSet {
  double t = 0.0;
  double alpha = 0.0;
  std::vector<Minimum> minima;  ///< sorted by m
  std::size_t degeneracy() const { return minima.size(); }
  double least_cost() const;
};

/// Stationary-point solver for fixed (J, h). Values of k, k' on the scan grid
/// and the inflection points of k are computed once and reused for every
/// (t, alpha), so one instance is cheap to query many times. Immutable after
/// construction and safe to share between threads.
class StationarySolver {
 public:
  static constexpr int kDefaultIntervals = 4096;
  static constexpr double kDegenerateSlope = 1e-10;
  static constexpr double kEqualityTolerance = 1e-9;
  static constexpr double kShortTime = 1e-8;

  explicit StationarySolver(const ModelParams& p, int intervals = kDefaultIntervals);

  const ModelParams& params() const noexcept { return p_; }
  int intervals() const noexcept { return intervals_; }

  /// All stationary points sorted by m. Throws SolverInvariantViolation if none
  /// is found (k - l changes sign on [-1, 1] for every t > 0).
  std::vector<StationaryPoint> points(double t, double alpha) const;

  /// Minimizing stationary points only, sorted by m.
  std::vector<StationaryPoint> local_minima(double t, double alpha) const;

  /// Global minimizers: every minimizing stationary point whose cost is within
  /// `tol` of the least one.
  MinimizerSet minimizers(double t, double alpha, double tol = kEqualityTolerance) const;

 private:
  ModelParams p_;
  int intervals_;
  std::vector<double> xs_;  // uniform grid merged with the zeros of k''
  std::vector<double> k_;
  std::vector<double> k1_;
};

std::vector<StationaryPoint> stationary_points(const ModelParams& p, double t, double alpha);
MinimizerSet global_minimizers(const ModelParams& p, double t, double alpha);

struct BranchSample {
  double t;
  double m_hat;
  bool jump;  ///< true if m_hat jumped somewhere in (t_prev, t]
};

struct BranchJump {
  double t;
  double m_before;
  double m_after;
};

struct BranchTrack {
  std::vector<BranchSample> samples;
  std::vector<BranchJump> jumps;  ///< refined so that both branches have equal cost
};

/// Follows the global minimizer t -> m_hat(t, alpha) over an increasing grid.
/// Ties are broken towards the previous value so the column stays continuous
/// wherever it can.
BranchTrack branch_track(const StationarySolver& solver, double alpha,
                         const std::vector<double>& t_grid);
BranchTrack branch_track(const ModelParams& p, double alpha, const std::vector<double>& t_grid);

/// d m_hat / d t from implicit differentiation of k(m) = l_{t,alpha}(m).
/// Throws TangencyError if |k'(m_hat) - coth(2t)| < 1e-10.
double branch_velocity(const ModelParams& p, double t, double m_hat, double alpha);

// Zero-field constructions (h = 0, alpha = 0).

/// acoth(x) for x > 1.
double acoth(double x);

/// Time at which +-m and 0 are stationary for alpha = 0: (1/2) acoth(a(m)/m).
double t_of_m(double m, double J);

/// Cost of the stationary point m at time t_of_m(m): J m^2/2 + log(1 - m tanh(J m))/2.
double cost_on_branch(double m, double J);

/// Maximizer of a(m)/m on (0, 1), the root of m a'(m) = a(m). Requires J > 3/2.
double m_one(double J);

/// Root of cost_on_branch on (m_one, 1). Requires J > 3/2.
double m_star(double J);

/// Critical time of the symmetric problem. Requires J > 1.
double psi_c(double J);

/// Boundary of the forbidden region at time t: the optimal paths from +-m_hat(t) to 0.
/// Points are addressed by the forward time s from the start of the paths, so
/// cones of different t share s = 0 and the cone of a later t contains the earlier one.
struct ForbiddenCone {
  double t;
  double m_hat;
  Trajectory upper;
  Trajectory lower;
  /// True if |m| <= upper(s); false for s outside [0, t].
  bool contains(double s, double m) const;
};

/// Requires J > 1, h = 0 and t >= psi_c(J); throws EmptyCone below psi_c.
ForbiddenCone forbidden_cone(double J, double t);

}  // namespace cwgng
