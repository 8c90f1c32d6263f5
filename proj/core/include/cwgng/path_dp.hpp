#pragma once

#include <vector>

#include "cwgng/model.hpp"

namespace cwgng {

/// Space-time grid for the brute-force path minimization. The magnetization
/// levels are uniformly spaced and shifted so that alpha is one of them.
struct PathGrid {
  int time_steps = 400;  ///< T_n >= 2
  int mag_levels = 400;  ///< G >= 3
  double t = 1.0;
  double alpha = 0.0;
  /// Longest edge, in time steps. Edges spanning several steps give slopes
  /// finer than (level spacing) / (time step).
  int max_span = 16;

  /// Throws DomainError unless the grid is admissible.
  void validate() const;
};

struct PathPoint {
  double s;
  double m;
};

struct PathDpResult {
  double value;   ///< I_S(start) + discrete action
  double start;   ///< magnetization of the optimal path at s = 0
  std::vector<PathPoint> path;
};

/// Dynamic program over piecewise-linear paths on the grid ending at alpha.
/// Edge cost is the Lagrangian at the segment midpoint times its duration.
PathDpResult path_dp(const ModelParams& p, const PathGrid& grid);

}  // namespace cwgng
