#include "cwgng/crossover.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cwgng/errors.hpp"
#include "cwgng/roots.hpp"
#include "sweep.hpp"

namespace cwgng {

namespace {

constexpr double kAlphaMargin = 1e-10;
constexpr double kRichardsonStep = 1e-8;

double last_jump_time(const StationarySolver& solver, double alpha) {
  const BifurcationReport r = scenario(solver, alpha);
  if (r.jumps.empty()) {
    std::ostringstream os;
    os.precision(17);
    os << "crossover_times: no bifurcation at alpha=" << alpha;
    throw SolverInvariantViolation(os.str());
  }
  return r.jumps.back().t;
}

// Conditioning magnetizations at which a local minimum is born or dies at time t.
std::vector<double> fold_alphas(const ModelParams& p, double t) {
  const TimeFactors tf = time_factors(t);
  std::vector<double> grid = uniform_grid(-1.0, 1.0, 4096);
  std::vector<double> infl;
  for (const auto& r : sign_change_roots([&](double m) { return k_second(m, p); }, grid)) {
    infl.push_back(r.x);
  }
  grid = merge_sorted(grid, infl);
  std::vector<double> out;
  for (const auto& r : sign_change_roots([&](double m) { return k_prime(m, p) - tf.coth2t; }, grid)) {
    // l_{t,alpha}(m) = k(m) solved for alpha.
    const double a = (r.x * tf.coth2t - k_fn(r.x, p)) / tf.csch2t;
    if (a > -1.0 + kAlphaMargin && a < 1.0 - kAlphaMargin) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Change {
  const char* name;
  double t;
  std::size_t before;
  std::size_t after;
};

void validate_changes(const StationarySolver& solver, std::vector<Change> changes) {
  std::sort(changes.begin(), changes.end(), [](const Change& a, const Change& b) { return a.t < b.t; });
  for (std::size_t i = 0; i < changes.size(); ++i) {
    const double left = i == 0 ? changes[i].t : changes[i].t - changes[i - 1].t;
    const double right = i + 1 == changes.size() ? changes[i].t : changes[i + 1].t - changes[i].t;
    const double delta = std::min({0.25 * left, 0.25 * right, 1e-3 * changes[i].t});
    const std::size_t nb = bad_set(solver, changes[i].t - delta).size();
    const std::size_t na = bad_set(solver, changes[i].t + delta).size();
    if (nb != changes[i].before || na != changes[i].after) {
      std::ostringstream os;
      os.precision(17);
      os << "crossover_times: at " << changes[i].name << "=" << changes[i].t << " expected "
         << changes[i].before << " -> " << changes[i].after << " bad magnetizations, probes found "
         << nb << " -> " << na;
      throw ValidationError(os.str());
    }
  }
}

std::string ordering_of(const CrossoverTimes& c) {
  std::vector<std::pair<double, const char*>> ts;
  if (c.psi_U) ts.emplace_back(*c.psi_U, "psi_U");
  if (c.psi_L) ts.emplace_back(*c.psi_L, "psi_L");
  if (c.psi_T) ts.emplace_back(*c.psi_T, "psi_T");
  if (c.psi_star) ts.emplace_back(*c.psi_star, "psi_star");
  if (c.psi_c) ts.emplace_back(*c.psi_c, "psi_c");
  std::sort(ts.begin(), ts.end());
  std::string out;
  for (const auto& [t, name] : ts) {
    if (!out.empty()) out += " < ";
    out += name;
  }
  return out;
}

// h > 0 only.
void positive_field(const ModelParams& p, const CrossoverOptions& opt, CrossoverTimes& c,
                    std::vector<Change>& changes) {
  if (p.J <= 1.0) return;
  const StationarySolver solver(p);
  const TangencyBounds b = tangency_bounds(p);
  if (b.m_U) {
    c.psi_U = tangency_time(*b.m_U, p);
    changes.push_back({"psi_U", *c.psi_U, 0, 1});
  }
  const double a = -1.0 + kRichardsonStep;
  const double t1 = last_jump_time(solver, a);
  const double t2 = last_jump_time(solver, -1.0 + 2.0 * kRichardsonStep);
  c.psi_star = 2.0 * t1 - t2;
  changes.push_back({"psi_star", *c.psi_star, 1, 0});
  if (b.L_B) c.t_B_at_L_B = last_jump_time(solver, *b.L_B);

  if (p.J <= 1.5) return;
  if (opt.with_h_star) c.h_star = h_star(p.J);
  const auto margin = double_window_margin(p);
  if (!margin || !(*margin > 0.0) || !b.m_L || !b.U_B) return;
  Trifurcation tri;
  try {
    tri = trifurcation_magnetization(p);
  } catch (const NotFound&) {
    return;
  }
  c.M_T = tri.M_T;
  c.psi_T = tri.t_T;
  c.psi_L = tangency_time(*b.m_L, p);
  changes.push_back({"psi_L", *c.psi_L, 1, 2});
  changes.push_back({"psi_T", *c.psi_T, 2, 1});

  // t_B is decreasing on (M_T, U_B) from psi_T to psi_U, and psi_U < psi_L < psi_T.
  double lo = tri.M_T;
  double hi = *b.U_B;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (last_jump_time(solver, mid) > *c.psi_L ? lo : hi) = mid;
  }
  c.M_B = 0.5 * (lo + hi);
}

}  // namespace

CrossoverTimes crossover_times(const ModelParams& p, const CrossoverOptions& opt) {
  CrossoverTimes c;
  const TangencyBounds b = tangency_bounds(p);
  c.U_B = b.U_B;
  c.L_B = b.L_B;
  std::vector<Change> changes;

  if (p.h == 0.0) {
    if (p.J > 1.0) {
      c.psi_c = psi_c(p.J);
      if (p.J > 1.5) {
        if (b.m_U) {
          c.psi_U = tangency_time(*b.m_U, p);
          changes.push_back({"psi_U", *c.psi_U, 0, 2});
        }
        changes.push_back({"psi_c", *c.psi_c, 2, 1});
      } else {
        changes.push_back({"psi_c", *c.psi_c, 0, 1});
      }
    }
  } else {
    const ModelParams q = p.h > 0.0 ? p : p.mirrored();
    positive_field(q, opt, c, changes);
    if (p.h < 0.0) {
      if (c.M_T) c.M_T = -*c.M_T;
      if (c.M_B) c.M_B = -*c.M_B;
    }
  }
  c.ordering = ordering_of(c);
  if (opt.validate && !changes.empty()) validate_changes(StationarySolver(p), changes);
  return c;
}

std::vector<double> bad_set(const StationarySolver& solver, double t, const BadSetOptions& opt) {
  if (!(t > 0.0)) throw DomainError("bad_set: t must be > 0");
  if (opt.grid < 2) throw DomainError("bad_set: grid must have at least 2 intervals");
  const ModelParams& p = solver.params();
  const double lo = -1.0 + kAlphaMargin;
  const double hi = 1.0 - kAlphaMargin;
  std::vector<double> cuts{lo};
  for (double a : fold_alphas(p, t)) cuts.push_back(a);
  cuts.push_back(hi);

  const std::vector<double> grid = uniform_grid(lo, hi, opt.grid);
  std::vector<detail::SweepPiece> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (!(b > a)) continue;
    std::vector<double> xs = detail::chebyshev_samples(a, b, 8);
    const auto first = std::upper_bound(grid.begin(), grid.end(), a);
    const auto last = std::lower_bound(grid.begin(), grid.end(), b);
    xs = merge_sorted(xs, std::vector<double>(first, last));
    // Near alpha = -1 the bad magnetization approaches the end of the range as t -> psi_star.
    if (i == 0) xs = merge_sorted(detail::geometric_samples(a, b, 24, 1e-9), xs);
    if (i + 2 == cuts.size()) {
      std::vector<double> ys = detail::geometric_samples(b, a, 24, 1e-9);
      std::reverse(ys.begin(), ys.end());
      xs = merge_sorted(xs, ys);
    }
    pieces.push_back({a, b, std::move(xs)});
  }
  const auto minima = [&](double a) { return detail::as_minima(solver.points(t, a)); };
  std::vector<double> out;
  for (const auto& e : detail::argmin_events(minima, pieces)) out.push_back(e.at);
  // At h = 0 the set is exactly symmetric. At large t the cost depends on alpha
  // only through e^{-2t} terms, so enforcing the symmetry beats the bisection.
  if (p.h == 0.0) {
    if (out.size() == 1) {
      out[0] = 0.0;
    } else if (out.size() == 2) {
      const double r = 0.5 * (out[1] - out[0]);
      out = {-r, r};
    }
  }
  return out;
}

std::vector<double> bad_set(const ModelParams& p, double t, const BadSetOptions& opt) {
  return bad_set(StationarySolver(p), t, opt);
}

const char* to_string(GibbsStatus s) { return s == GibbsStatus::gibbs ? "Gibbs" : "nonGibbs"; }

GibbsTimeline gibbs_timeline(const ModelParams& p, double t_max, int probes_per_segment) {
  if (!(t_max > 0.0)) throw DomainError("gibbs_timeline: t_max must be > 0");
  if (probes_per_segment < 1) throw DomainError("gibbs_timeline: need at least one probe per segment");
  GibbsTimeline tl;
  tl.t_max = t_max;
  CrossoverOptions copt;
  copt.with_h_star = false;
  tl.crossovers = crossover_times(p, copt);
  const CrossoverTimes& c = tl.crossovers;

  // Predicted structure as (end time, bad count, descriptor); the last entry is unbounded.
  struct Piece {
    double end;
    int bad;
    const char* descriptor;
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<Piece> plan;
  if (p.J <= 1.0) {
    plan.push_back({inf, 0, "{}"});
  } else if (p.h == 0.0) {
    const double tc = *c.psi_c;
    if (p.J <= 1.5) {
      plan.push_back({tc, 0, "{}"});
      plan.push_back({inf, 1, "{0}"});
    } else {
      if (!c.psi_U) throw SolverInvariantViolation("gibbs_timeline: psi_U missing for J > 3/2");
      plan.push_back({*c.psi_U, 0, "{}"});
      plan.push_back({tc, 2, "{-alpha, +alpha}"});
      plan.push_back({inf, 1, "{0}"});
    }
  } else {
    if (!c.psi_U || !c.psi_star) throw SolverInvariantViolation("gibbs_timeline: psi_U or psi_star missing");
    plan.push_back({*c.psi_U, 0, "{}"});
    if (c.psi_L && c.psi_T) {
      plan.push_back({*c.psi_L, 1, "{alpha}"});
      plan.push_back({*c.psi_T, 2, "{alpha1, alpha2}"});
    }
    plan.push_back({*c.psi_star, 1, "{alpha}"});
    plan.push_back({inf, 0, "{}"});
  }

  const StationarySolver solver(p);
  double start = 0.0;
  for (const Piece& pc : plan) {
    if (start >= t_max) break;
    TimelineSegment seg;
    seg.t_lo = start;
    seg.t_hi = std::min(pc.end, t_max);
    seg.status = pc.bad == 0 ? GibbsStatus::gibbs : GibbsStatus::non_gibbs;
    seg.bad_count = pc.bad;
    seg.descriptor = pc.descriptor;
    for (int j = 1; j <= probes_per_segment; ++j) {
      const double t = seg.t_lo + (seg.t_hi - seg.t_lo) * j / (probes_per_segment + 1.0);
      TimelineProbe probe{t, bad_set(solver, t)};
      if (static_cast<int>(probe.bad.size()) != pc.bad) {
        std::ostringstream os;
        os.precision(17);
        os << "gibbs_timeline: probe at t=" << t << " found " << probe.bad.size()
           << " bad magnetizations, segment (" << seg.t_lo << ", " << seg.t_hi << "] predicts "
           << pc.bad;
        throw ValidationError(os.str());
      }
      seg.probes.push_back(std::move(probe));
    }
    tl.segments.push_back(std::move(seg));
    start = pc.end;
  }
  return tl;
}

}  // namespace cwgng
