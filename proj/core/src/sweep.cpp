#include "sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>

namespace cwgng::detail {

namespace {

double noise_floor(double a, double b) {
  return 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(a) + std::abs(b));
}

std::size_t cheapest(const std::vector<Minimum>& mins) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < mins.size(); ++i) {
    if (mins[i].cost < mins[best].cost) best = i;
  }
  return best;
}

std::size_t nearest(const std::vector<Minimum>& mins, double m) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < mins.size(); ++i) {
    if (std::abs(mins[i].m - m) < std::abs(mins[best].m - m)) best = i;
  }
  return best;
}

class Resolver {
 public:
  Resolver(const MinimaAt& minima, std::size_t count, const SweepOptions& opt,
           std::vector<SweepEvent>& out)
      : minima_(minima), count_(count), opt_(opt), out_(out) {}

  std::optional<std::vector<Minimum>> at(double x) const {
    std::vector<Minimum> mins = minima_(x);
    if (mins.size() != count_) return std::nullopt;
    return mins;
  }

  // Branch i is cheapest at lo, branch j at hi.
  void resolve(double lo, double hi, std::size_t i, std::size_t j, int depth) {
    const double lo0 = lo;
    const double hi0 = hi;
    double m_before = std::numeric_limits<double>::quiet_NaN();
    double m_after = std::numeric_limits<double>::quiet_NaN();
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (hi - lo <= opt_.relative_tolerance * std::max(1.0, std::abs(mid))) break;
      const auto mins = at(mid);
      if (!mins) break;
      if ((*mins)[i].cost - (*mins)[j].cost <= 0.0) {
        lo = mid;
        m_before = (*mins)[i].m;
      } else {
        hi = mid;
        m_after = (*mins)[j].m;
      }
    }
    const double x = 0.5 * (lo + hi);
    const auto mins = at(x);
    if (!mins) {
      out_.push_back({x, m_before, m_after});
      return;
    }
    const double ci = (*mins)[i].cost;
    const double cj = (*mins)[j].cost;
    const std::size_t k = cheapest(*mins);
    if (k != i && k != j && (*mins)[k].cost < std::min(ci, cj) - noise_floor(ci, cj) &&
        depth < opt_.max_depth) {
      // A third branch undercuts both at the crossing: two separate events.
      resolve(lo0, x, i, k, depth + 1);
      resolve(x, hi0, k, j, depth + 1);
      return;
    }
    out_.push_back({x, (*mins)[i].m, (*mins)[j].m});
  }

 private:
  const MinimaAt& minima_;
  std::size_t count_;
  const SweepOptions& opt_;
  std::vector<SweepEvent>& out_;
};

}  // namespace

std::vector<double> chebyshev_samples(double a, double b, int n) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double u = 0.5 * (1.0 - std::cos(std::numbers::pi * (j + 0.5) / n));
    xs.push_back(a + (b - a) * u);
  }
  return xs;
}

std::vector<double> geometric_samples(double a, double b, int n, double min_fraction) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(n));
  const double log_lo = std::log(min_fraction);
  for (int j = 0; j < n; ++j) {
    const double frac = std::exp(log_lo * (1.0 - static_cast<double>(j) / (n - 1)));
    xs.push_back(a + (b - a) * frac);
  }
  return xs;
}

std::vector<Minimum> as_minima(const std::vector<StationaryPoint>& pts) {
  std::vector<Minimum> out;
  out.reserve(pts.size());
  for (const auto& sp : pts) {
    if (sp.minimizing()) out.push_back({sp.m, sp.cost});
  }
  return out;
}

std::vector<SweepEvent> argmin_events(const MinimaAt& minima, const std::vector<SweepPiece>& pieces,
                                      const SweepOptions& opt) {
  std::vector<SweepEvent> events;
  bool have_previous = false;
  double last_m = 0.0;

  for (const SweepPiece& piece : pieces) {
    std::vector<std::vector<Minimum>> table;
    table.reserve(piece.samples.size());
    std::map<std::size_t, int> counts;
    for (double x : piece.samples) {
      table.push_back(minima(x));
      ++counts[table.back().size()];
    }
    std::size_t expected = 0;
    int votes = -1;
    for (const auto& [n, c] : counts) {
      if (n > 0 && c > votes) {
        expected = n;
        votes = c;
      }
    }
    if (expected == 0) continue;
    Resolver resolver(minima, expected, opt, events);

    bool started = false;
    std::size_t cur = 0;
    double prev_x = 0.0;
    for (std::size_t s = 0; s < piece.samples.size(); ++s) {
      const std::vector<Minimum>& mins = table[s];
      const double x = piece.samples[s];
      if (mins.size() != expected) continue;
      const std::size_t best = cheapest(mins);
      if (!started) {
        started = true;
        if (!have_previous) {
          cur = best;
        } else {
          cur = nearest(mins, last_m);
          if (best != cur && mins[best].cost < mins[cur].cost - noise_floor(mins[best].cost, mins[cur].cost)) {
            // The switch happened between the previous piece and this sample.
            const double lo = piece.lo + 1e-6 * (x - piece.lo);
            if (const auto lo_mins = resolver.at(lo); lo_mins && nearest(*lo_mins, last_m) == cur) {
              resolver.resolve(lo, x, cur, best, 0);
            } else {
              events.push_back({x, mins[cur].m, mins[best].m});
            }
            cur = best;
          }
        }
      } else if (best != cur &&
                 mins[best].cost < mins[cur].cost - noise_floor(mins[best].cost, mins[cur].cost)) {
        resolver.resolve(prev_x, x, cur, best, 0);
        cur = best;
      }
      prev_x = x;
      last_m = mins[cur].m;
      have_previous = true;
    }
  }
  return events;
}

}  // namespace cwgng::detail
