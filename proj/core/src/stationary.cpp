#include "cwgng/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cwgng/errors.hpp"
#include "cwgng/roots.hpp"
#include "cwgng/tangency.hpp"

namespace cwgng {

const char* to_string(PointKind k) {
  switch (k) {
    case PointKind::local_min:
      return "local_min";
    case PointKind::local_max:
      return "local_max";
    case PointKind::degenerate:
      return "degenerate";
  }
  return "unknown";
}

double MinimizerSet::least_cost() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& x : minima) best = std::min(best, x.cost);
  return best;
}

StationarySolver::StationarySolver(const ModelParams& p, int intervals)
    : p_(p), intervals_(intervals) {
  if (intervals < 16) throw DomainError("StationarySolver: need at least 16 scan intervals");
  const std::vector<double> grid = uniform_grid(-1.0, 1.0, intervals);
  // k' is monotone between consecutive zeros of k'', so adding them to the grid
  // guarantees at most one root of k' - coth(2t) per cell.
  std::vector<double> inflections;
  for (const auto& r : sign_change_roots([&](double m) { return k_second(m, p_); }, grid)) {
    inflections.push_back(r.x);
  }
  xs_ = merge_sorted(grid, inflections);
  k_.resize(xs_.size());
  k1_.resize(xs_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    k_[i] = k_fn(xs_[i], p_);
    k1_[i] = k_prime(xs_[i], p_);
  }
}

std::vector<StationaryPoint> StationarySolver::points(double t, double alpha) const {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("stationary_points: t must be > 0");
  if (!(std::abs(alpha) <= 1.0)) throw DomainError("stationary_points: |alpha| must be <= 1");
  const ConditionedCost cost(p_, t, alpha);

  if (t < kShortTime) {
    // l is nearly vertical: the only crossing sits at alpha.
    StationaryPoint sp;
    sp.m = alpha;
    sp.cost = cost(alpha);
    sp.kind = PointKind::local_min;
    sp.direction = -1;
    sp.slope_gap = k_prime(alpha, p_) - cost.factors().coth2t;
    return {sp};
  }

  const double c = cost.factors().coth2t;
  const double s = cost.factors().csch2t;
  auto g = [&](double m) { return k_fn(m, p_) - m * c + alpha * s; };
  auto g1 = [&](double m) { return k_prime(m, p_) - c; };

  // Scan points: grid, inflections of k and the roots of g'. Between two
  // consecutive scan points g is monotone, so every root is bracketed.
  std::vector<double> sx;
  std::vector<double> sg;
  sx.reserve(xs_.size() + 8);
  sg.reserve(xs_.size() + 8);
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    sx.push_back(xs_[i]);
    sg.push_back(k_[i] - xs_[i] * c + alpha * s);
    if (i + 1 == xs_.size()) break;
    const double d0 = k1_[i] - c;
    const double d1 = k1_[i + 1] - c;
    if (d0 != 0.0 && d1 != 0.0 && (d0 > 0.0) != (d1 > 0.0)) {
      const double r = bisect(g1, xs_[i], xs_[i + 1], d0);
      if (r > xs_[i] && r < xs_[i + 1]) {
        sx.push_back(r);
        sg.push_back(g(r));
      }
    }
  }

  std::vector<StationaryPoint> out;
  auto emit = [&](double m, int dir) {
    StationaryPoint sp;
    sp.m = m;
    sp.direction = dir;
    sp.slope_gap = g1(m);
    if (dir == 0 || std::abs(sp.slope_gap) < kDegenerateSlope) {
      sp.kind = PointKind::degenerate;
    } else {
      sp.kind = dir < 0 ? PointKind::local_min : PointKind::local_max;
    }
    sp.cost = cost(m);
    out.push_back(sp);
  };
  for (std::size_t i = 0; i < sx.size(); ++i) {
    if (sg[i] == 0.0) {
      const double left = i > 0 ? sg[i - 1] : 0.0;
      const double right = i + 1 < sx.size() ? sg[i + 1] : 0.0;
      int dir = 0;
      if (left > 0.0 && right < 0.0) dir = -1;
      if (left < 0.0 && right > 0.0) dir = +1;
      if (sx[i] > -1.0 && sx[i] < 1.0) emit(sx[i], dir);
      continue;
    }
    if (i + 1 < sx.size() && sg[i + 1] != 0.0 && (sg[i] > 0.0) != (sg[i + 1] > 0.0)) {
      emit(bisect(g, sx[i], sx[i + 1], sg[i]), sg[i] > 0.0 ? -1 : +1);
    }
  }
  if (out.empty()) {
    std::ostringstream os;
    os.precision(17);
    os << "stationary_points: k - l has no sign change on [-1, 1] (J=" << p_.J << ", h=" << p_.h
       << ", t=" << t << ", alpha=" << alpha << ")";
    throw SolverInvariantViolation(os.str());
  }
  return out;
}

std::vector<StationaryPoint> StationarySolver::local_minima(double t, double alpha) const {
  std::vector<StationaryPoint> pts = points(t, alpha);
  std::erase_if(pts, [](const StationaryPoint& sp) { return !sp.minimizing(); });
  return pts;
}

MinimizerSet StationarySolver::minimizers(double t, double alpha, double tol) const {
  const std::vector<StationaryPoint> mins = local_minima(t, alpha);
  if (mins.empty()) {
    std::ostringstream os;
    os.precision(17);
    os << "global_minimizers: no minimizing stationary point (J=" << p_.J << ", h=" << p_.h
       << ", t=" << t << ", alpha=" << alpha << ")";
    throw SolverInvariantViolation(os.str());
  }
  double least = std::numeric_limits<double>::infinity();
  for (const auto& sp : mins) least = std::min(least, sp.cost);

  // The cost decreases away from m = -1 and increases towards m = +1, so an
  // endpoint beating every interior minimum would mean a broken solver.
  const ConditionedCost cost(p_, t, alpha);
  for (double e : {-1.0 + ConditionedCost::kMargin, 1.0 - ConditionedCost::kMargin}) {
    const double ce = cost(e);
    if (ce < least - tol) {
      std::ostringstream os;
      os.precision(17);
      os << "global_minimizers: endpoint m=" << e << " has cost " << ce
         << " below every stationary minimum " << least;
      throw SolverInvariantViolation(os.str());
    }
  }

  MinimizerSet set;
  set.t = t;
  set.alpha = alpha;
  for (const auto& sp : mins) {
    if (sp.cost <= least + tol) set.minima.push_back({sp.m, sp.cost});
  }
  return set;
}

std::vector<StationaryPoint> stationary_points(const ModelParams& p, double t, double alpha) {
  return StationarySolver(p).points(t, alpha);
}

MinimizerSet global_minimizers(const ModelParams& p, double t, double alpha) {
  return StationarySolver(p).minimizers(t, alpha);
}

double branch_velocity(const ModelParams& p, double t, double m_hat, double alpha) {
  const TimeFactors tf = time_factors(t);
  const double gap = k_prime(m_hat, p) - tf.coth2t;
  if (std::abs(gap) < StationarySolver::kDegenerateSlope) {
    std::ostringstream os;
    os.precision(17);
    os << "branch_velocity: k'(m) - coth(2t) = " << gap << " at m=" << m_hat << ", t=" << t;
    throw TangencyError(os.str());
  }
  // d l / d t at fixed m is -2 csch(2t) {m csch(2t) - alpha coth(2t)}.
  return -2.0 * tf.csch2t * (m_hat * tf.csch2t - alpha * tf.coth2t) / gap;
}

namespace {

const StationaryPoint* nearest_minimum(const std::vector<StationaryPoint>& mins, double m) {
  const StationaryPoint* best = nullptr;
  for (const auto& sp : mins) {
    if (best == nullptr || std::abs(sp.m - m) < std::abs(best->m - m)) best = &sp;
  }
  return best;
}

double pick_minimizer(const MinimizerSet& set, double reference) {
  double best = set.minima.front().m;
  for (const auto& x : set.minima) {
    if (std::abs(x.m - reference) < std::abs(best - reference)) best = x.m;
  }
  return best;
}

double lipschitz_speed(const ModelParams& p, double t, double m, double alpha) {
  try {
    return std::abs(branch_velocity(p, t, m, alpha));
  } catch (const TangencyError&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Bisects the time at which the minimum continued from `m_lo` (global at t_lo)
// and the one continued from `m_hi` (global at t_hi) have equal cost. Returns
// nothing when they are the same branch or the cost difference has no sign
// change, i.e. the minimizer moved steeply but continuously.
std::optional<BranchJump> refine_jump(const StationarySolver& solver, double alpha, double t_lo,
                                      double m_lo, double t_hi, double m_hi) {
  constexpr double kSameBranch = 1e-7;
  double ref_a = m_lo;
  double ref_b = m_hi;
  auto diff = [&](double t, double& ma, double& mb) -> std::optional<double> {
    const auto mins = solver.local_minima(t, alpha);
    const StationaryPoint* a = nearest_minimum(mins, ref_a);
    const StationaryPoint* b = nearest_minimum(mins, ref_b);
    if (a == nullptr || b == nullptr || std::abs(a->m - b->m) < kSameBranch) return std::nullopt;
    ma = a->m;
    mb = b->m;
    return a->cost - b->cost;
  };
  double ma = m_lo;
  double mb = m_hi;
  const auto d_lo = diff(t_lo, ma, mb);
  const auto d_hi = diff(t_hi, ma, mb);
  if (!d_lo || !d_hi || *d_lo > 0.0 || *d_hi < 0.0) return std::nullopt;
  double lo = t_lo;
  double hi = t_hi;
  double before = m_lo;
  double after = m_hi;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double a = 0.0;
    double b = 0.0;
    const auto d = diff(mid, a, b);
    if (!d) return std::nullopt;
    if (*d <= 0.0) {
      lo = mid;
      before = a;
    } else {
      hi = mid;
      after = b;
    }
    ref_a = a;
    ref_b = b;
  }
  return BranchJump{0.5 * (lo + hi), before, after};
}

}  // namespace

BranchTrack branch_track(const StationarySolver& solver, double alpha,
                         const std::vector<double>& t_grid) {
  BranchTrack out;
  if (t_grid.empty()) return out;
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) throw DomainError("branch_track: t_grid must be increasing");
  }
  if (!(t_grid.front() > 0.0)) throw DomainError("branch_track: t_grid must be positive");
  const ModelParams& p = solver.params();

  // Local minima are born and die only at fold times. Splitting each grid step
  // just around them keeps both competing branches alive on the sub-step where
  // a jump happens, even when the fold window is far shorter than the step.
  const std::vector<double> folds = fold_times(p, alpha);

  double prev_t = 0.0;
  double prev_m = alpha;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    const MinimizerSet set = solver.minimizers(t, alpha);
    bool jump = false;
    if (i == 0) {
      prev_m = pick_minimizer(set, prev_m);
    } else {
      std::vector<double> cuts{prev_t};
      for (double f : folds) {
        if (f > prev_t && f < t) cuts.push_back(f);
      }
      cuts.push_back(t);
      std::vector<double> stops;
      for (std::size_t c = 1; c + 1 < cuts.size(); ++c) {
        const double d = 1e-3 * std::min(cuts[c] - cuts[c - 1], cuts[c + 1] - cuts[c]);
        stops.push_back(cuts[c] - d);
        stops.push_back(cuts[c] + d);
      }
      stops.push_back(t);
      double a_t = prev_t;
      double a_m = prev_m;
      for (double b_t : stops) {
        if (!(b_t > a_t)) continue;
        const double b_m = b_t == t ? pick_minimizer(set, a_m)
                                    : pick_minimizer(solver.minimizers(b_t, alpha), a_m);
        const double dt = b_t - a_t;
        const double speed = std::max(lipschitz_speed(p, a_t, a_m, alpha),
                                      lipschitz_speed(p, b_t, b_m, alpha));
        const auto mins = solver.local_minima(b_t, alpha);
        const StationaryPoint* cont = nearest_minimum(mins, a_m);
        const bool steep = std::abs(b_m - a_m) > 10.0 * speed * dt + 1e-9;
        const bool switched = cont != nullptr && std::abs(cont->m - b_m) > 1e-7;
        if (steep || switched) {
          if (auto j = refine_jump(solver, alpha, a_t, a_m, b_t, b_m)) {
            jump = true;
            out.jumps.push_back(*j);
          }
        }
        a_t = b_t;
        a_m = b_m;
      }
      prev_m = a_m;
    }
    out.samples.push_back({t, prev_m, jump});
    prev_t = t;
  }
  return out;
}

BranchTrack branch_track(const ModelParams& p, double alpha, const std::vector<double>& t_grid) {
  return branch_track(StationarySolver(p), alpha, t_grid);
}

double acoth(double x) {
  if (!(x > 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "acoth: argument must be > 1, got " << x;
    throw DomainError(os.str());
  }
  return 0.5 * std::log1p(2.0 / (x - 1.0));
}

double t_of_m(double m, double J) {
  if (m == 0.0) throw DomainError("t_of_m: m must be nonzero");
  const double ratio = a_fn(m, J) / m;
  if (!(ratio > 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "t_of_m: a(m)/m = " << ratio << " <= 1 at m=" << m << ", J=" << J;
    throw DomainError(os.str());
  }
  return 0.5 * acoth(ratio);
}

double cost_on_branch(double m, double J) {
  const double arg = 1.0 - m * std::tanh(J * m);
  if (!(arg > 0.0)) throw DomainError("cost_on_branch: 1 - m tanh(J m) <= 0");
  return 0.5 * J * m * m + 0.5 * std::log(arg);
}

namespace {

std::vector<double> open_unit_grid() {
  std::vector<double> xs = uniform_grid(0.0, 1.0, StationarySolver::kDefaultIntervals);
  xs.erase(xs.begin());
  xs.pop_back();
  return xs;
}

void require_above_three_halves(double J, const char* who) {
  if (!(J > 1.5)) {
    std::ostringstream os;
    os << who << ": requires J > 3/2, got " << J;
    throw DomainError(os.str());
  }
}

}  // namespace

double m_one(double J) {
  require_above_three_halves(J, "m_one");
  auto f = [J](double m) { return m * a_prime(m, J) - a_fn(m, J); };
  for (const auto& r : sign_change_roots(f, open_unit_grid())) {
    if (r.direction < 0) return r.x;
  }
  throw SolverInvariantViolation("m_one: no root of m a'(m) = a(m) on (0, 1)");
}

double m_star(double J) {
  require_above_three_halves(J, "m_star");
  const double m1 = m_one(J);
  std::vector<double> xs = uniform_grid(m1, 1.0, StationarySolver::kDefaultIntervals);
  xs.pop_back();
  auto f = [J](double m) { return cost_on_branch(m, J); };
  for (const auto& r : sign_change_roots(f, xs)) {
    if (r.direction < 0) return r.x;
  }
  throw SolverInvariantViolation("m_star: cost_on_branch has no root on (m_1, 1)");
}

double psi_c(double J) {
  if (!(J > 1.0)) {
    std::ostringstream os;
    os << "psi_c: requires J > 1, got " << J;
    throw DomainError(os.str());
  }
  if (J <= 1.5) return 0.5 * acoth(2.0 * J - 1.0);
  return t_of_m(m_star(J), J);
}

bool ForbiddenCone::contains(double s, double m) const {
  if (s < 0.0 || s > t) return false;
  return std::abs(m) <= upper.position(s);
}

ForbiddenCone forbidden_cone(double J, double t) {
  const double pc = psi_c(J);
  if (!(t >= pc)) {
    std::ostringstream os;
    os.precision(17);
    os << "forbidden_cone: t=" << t << " is below psi_c=" << pc;
    throw EmptyCone(os.str());
  }
  double m_hat = 0.0;
  if (t - pc <= 1e-12 * pc) {
    m_hat = J > 1.5 ? m_star(J) : 0.0;
  } else {
    const MinimizerSet set = StationarySolver(ModelParams::make(J, 0.0)).minimizers(t, 0.0);
    for (const auto& x : set.minima) m_hat = std::max(m_hat, std::abs(x.m));
  }
  return {t, m_hat, Trajectory(m_hat, t, 0.0), Trajectory(-m_hat, t, 0.0)};
}

}  // namespace cwgng
