#pragma once

// One-parameter sweep of the global minimizer. The sweep parameter (time or
// conditioning magnetization) is split at fold values; inside each piece the
// number of local minima is constant and their order in m identifies the
// branches, so a change of the cheapest branch can be bisected exactly.

#include <functional>
#include <vector>

#include "cwgng/stationary.hpp"

namespace cwgng::detail {

using MinimaAt = std::function<std::vector<Minimum>(double)>;

struct SweepPiece {
  double lo;
  double hi;
  std::vector<double> samples;  ///< sorted, strictly inside (lo, hi)
};

struct SweepEvent {
  double at;
  double m_before;
  double m_after;
};

struct SweepOptions {
  /// Bisection stops once the bracket is below this times max(1, |lambda|).
  double relative_tolerance = 1e-13;
  int max_depth = 8;
};

/// Points of (a, b) clustered towards both ends (Chebyshev nodes).
std::vector<double> chebyshev_samples(double a, double b, int n);

/// Points of (a, b) geometrically clustered towards a.
std::vector<double> geometric_samples(double a, double b, int n, double min_fraction = 1e-5);

/// Events where the cheapest branch changes, in sweep order. Piece boundaries
/// must be the fold values; samples of consecutive pieces are joined by the
/// nearest-magnetization rule.
std::vector<SweepEvent> argmin_events(const MinimaAt& minima, const std::vector<SweepPiece>& pieces,
                                      const SweepOptions& opt = {});

std::vector<Minimum> as_minima(const std::vector<StationaryPoint>& pts);

}  // namespace cwgng::detail
