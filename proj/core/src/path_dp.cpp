#include "cwgng/path_dp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "cwgng/errors.hpp"

namespace cwgng {

void PathGrid::validate() const {
  std::ostringstream os;
  if (time_steps < 2) os << "path grid: time_steps must be >= 2 (got " << time_steps << ")";
  else if (mag_levels < 3) os << "path grid: mag_levels must be >= 3 (got " << mag_levels << ")";
  else if (!(t > 0.0) || !std::isfinite(t)) os << "path grid: t must be > 0";
  else if (!(std::abs(alpha) < 1.0)) os << "path grid: |alpha| must be < 1";
  else if (max_span < 1) os << "path grid: max_span must be >= 1";
  const std::string msg = os.str();
  if (!msg.empty()) throw DomainError(msg);
}

PathDpResult path_dp(const ModelParams& p, const PathGrid& grid) {
  grid.validate();
  const double dm = 2.0 / grid.mag_levels;
  const double edge = 1.0 - 0.25 * dm;
  const int below = static_cast<int>(std::floor((grid.alpha + edge) / dm));
  const int above = static_cast<int>(std::floor((edge - grid.alpha) / dm));
  std::vector<double> levels;
  for (int j = -below; j <= above; ++j) levels.push_back(grid.alpha + j * dm);
  const std::size_t G = levels.size();
  const std::size_t end_level = static_cast<std::size_t>(below);

  const int T = grid.time_steps;
  const int R = std::min(grid.max_span, T);
  const double ds = grid.t / T;

  // The Lagrangian does not depend on time, so edge costs depend only on the span.
  std::vector<double> cost(static_cast<std::size_t>(R) * G * G);
  for (int r = 1; r <= R; ++r) {
    const double dur = r * ds;
    for (std::size_t i = 0; i < G; ++i) {
      double* row = &cost[((static_cast<std::size_t>(r) - 1) * G + i) * G];
      for (std::size_t j = 0; j < G; ++j) {
        const double mid = 0.5 * (levels[i] + levels[j]);
        row[j] = lagrangian(mid, (levels[j] - levels[i]) / dur) * dur;
      }
    }
  }

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> V(static_cast<std::size_t>(T + 1) * G, inf);
  std::vector<std::uint32_t> from(static_cast<std::size_t>(T + 1) * G, 0);
  for (std::size_t i = 0; i < G; ++i) V[i] = static_rate(levels[i], p);

  std::vector<double> best(G);
  std::vector<std::uint32_t> arg(G);
  for (int k = 1; k <= T; ++k) {
    std::fill(best.begin(), best.end(), inf);
    for (int r = 1; r <= std::min(R, k); ++r) {
      const double* prev = &V[static_cast<std::size_t>(k - r) * G];
      for (std::size_t i = 0; i < G; ++i) {
        const double vi = prev[i];
        if (!std::isfinite(vi)) continue;
        const double* row = &cost[((static_cast<std::size_t>(r) - 1) * G + i) * G];
        const std::uint32_t tag = static_cast<std::uint32_t>((r - 1) * G + i);
        for (std::size_t j = 0; j < G; ++j) {
          const double c = vi + row[j];
          if (c < best[j]) {
            best[j] = c;
            arg[j] = tag;
          }
        }
      }
    }
    std::copy(best.begin(), best.end(), V.begin() + static_cast<std::ptrdiff_t>(k) * G);
    std::copy(arg.begin(), arg.end(), from.begin() + static_cast<std::ptrdiff_t>(k) * G);
  }

  PathDpResult out;
  out.value = V[static_cast<std::size_t>(T) * G + end_level];
  std::vector<PathPoint> rev;
  int k = T;
  std::size_t j = end_level;
  rev.push_back({grid.t, levels[j]});
  while (k > 0) {
    const std::uint32_t tag = from[static_cast<std::size_t>(k) * G + j];
    const int r = static_cast<int>(tag / G) + 1;
    j = tag % G;
    k -= r;
    rev.push_back({k * ds, levels[j]});
  }
  out.start = levels[j];
  out.path.assign(rev.rbegin(), rev.rend());
  return out;
}

}  // namespace cwgng
