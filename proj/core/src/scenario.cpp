#include <algorithm>
#include <cmath>
#include <sstream>

#include "cwgng/bifurcation.hpp"
#include "cwgng/errors.hpp"
#include "sweep.hpp"

namespace cwgng {

namespace {

constexpr double kTieTolerance = 1e-8;
constexpr double kMergeTolerance = 1e-12;
constexpr double kAgreementTolerance = 1e-8;

std::vector<double> global_ms(const StationarySolver& solver, double t, double alpha) {
  std::vector<double> out;
  for (const Minimum& mn : solver.minimizers(t, alpha, kTieTolerance).minima) out.push_back(mn.m);
  return out;
}

BifurcationReport symmetric_report(const StationarySolver& solver) {
  const double J = solver.params().J;
  BifurcationReport r;
  r.alpha = 0.0;
  if (J <= 1.0) return r;
  const double t = psi_c(J);
  const double m = J > 1.5 ? m_star(J) : 0.0;
  std::vector<double> ms = J > 1.5 ? std::vector<double>{-m, 0.0, m} : std::vector<double>{0.0};
  r.scenario = ScenarioKind::single;
  r.t_B = t;
  r.jumps.push_back({t, 0.0, m, std::move(ms)});
  return r;
}

void cross_check(const StationarySolver& solver, double alpha, const std::vector<double>& folds,
                 double t_end, const BifurcationReport& r) {
  std::vector<double> grid;
  const int n = 1200;
  const double lo = 1e-4;
  for (int i = 0; i < n; ++i) {
    grid.push_back(lo * std::pow(t_end / lo, static_cast<double>(i) / (n - 1)));
  }
  // Fold windows can be much narrower than the geometric spacing.
  for (std::size_t i = 0; i + 1 < folds.size(); ++i) {
    for (int j = 1; j < 200; ++j) grid.push_back(folds[i] + (folds[i + 1] - folds[i]) * j / 200.0);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  const BranchTrack track = branch_track(solver, alpha, grid);
  bool ok = track.jumps.size() == r.jumps.size();
  for (std::size_t i = 0; ok && i < track.jumps.size(); ++i) {
    ok = std::abs(track.jumps[i].t - r.jumps[i].t) <= kAgreementTolerance;
  }
  if (!ok) {
    std::ostringstream os;
    os.precision(17);
    os << "scenario: " << r.jumps.size() << " jumps but branch_track found " << track.jumps.size()
       << " at alpha=" << alpha << " (J=" << solver.params().J << ", h=" << solver.params().h << ")";
    throw ContradictionError(os.str());
  }
}

}  // namespace

const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::none:
      return "none";
    case ScenarioKind::single:
      return "single";
    case ScenarioKind::double_bifurcation:
      return "double";
    case ScenarioKind::trifurcation:
      return "tri";
  }
  return "?";
}

BifurcationReport scenario(const StationarySolver& solver, double alpha, const ScenarioOptions& opt) {
  if (!(std::abs(alpha) <= 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "scenario: |alpha| > 1 (alpha=" << alpha << ")";
    throw DomainError(os.str());
  }
  const ModelParams& p = solver.params();
  if (p.h == 0.0 && alpha == 0.0) return symmetric_report(solver);

  BifurcationReport r;
  r.alpha = alpha;
  const std::vector<double> folds = fold_times(p, alpha);
  if (folds.empty()) return r;
  const double t_end = opt.t_end > 0.0 ? opt.t_end : std::max(20.0, 3.0 * folds.back());

  std::vector<double> cuts{0.0};
  for (double f : folds) {
    if (f < t_end) cuts.push_back(f);
  }
  cuts.push_back(t_end);
  std::vector<detail::SweepPiece> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    const bool last = i + 2 == cuts.size();
    pieces.push_back({a, b,
                      last ? detail::geometric_samples(a, b, 2 * opt.samples_per_piece, 1e-7)
                           : detail::chebyshev_samples(a, b, opt.samples_per_piece)});
  }
  const auto minima = [&](double t) { return detail::as_minima(solver.points(t, alpha)); };
  const auto events = detail::argmin_events(minima, pieces);

  for (const auto& e : events) {
    if (!r.jumps.empty() && std::abs(e.at - r.jumps.back().t) <= kMergeTolerance) {
      r.jumps.back().m_after = e.m_after;
      r.jumps.back().minimizers = global_ms(solver, r.jumps.back().t, alpha);
      continue;
    }
    r.jumps.push_back({e.at, e.m_before, e.m_after, global_ms(solver, e.at, alpha)});
  }

  const bool triple = std::any_of(r.jumps.begin(), r.jumps.end(),
                                  [](const Jump& j) { return j.minimizers.size() >= 3; });
  if (r.jumps.size() == 1) {
    r.t_B = r.jumps[0].t;
    r.scenario = ScenarioKind::single;
  } else if (r.jumps.size() == 2) {
    r.s_B = r.jumps[0].t;
    r.t_B = r.jumps[1].t;
    r.scenario = ScenarioKind::double_bifurcation;
  } else if (r.jumps.size() > 2) {
    std::ostringstream os;
    os.precision(17);
    os << "scenario: " << r.jumps.size() << " jumps at alpha=" << alpha << " (J=" << p.J
       << ", h=" << p.h << ")";
    throw SolverInvariantViolation(os.str());
  }
  if (triple) {
    for (const Jump& j : r.jumps) {
      if (j.minimizers.size() >= 3) r.t_T = j.t;
    }
    r.scenario = ScenarioKind::trifurcation;
  }
  if (opt.cross_validate) cross_check(solver, alpha, folds, t_end, r);
  return r;
}

BifurcationReport scenario(const ModelParams& p, double alpha, const ScenarioOptions& opt) {
  return scenario(StationarySolver(p), alpha, opt);
}

std::optional<double> double_window_margin(const ModelParams& p) {
  const TangencyBounds b = tangency_bounds(p);
  if (!b.L_B || !b.m_L) return std::nullopt;
  const StationarySolver solver(p);
  const BifurcationReport r = scenario(solver, *b.L_B);
  if (r.jumps.empty()) return std::nullopt;
  return r.jumps.back().t - tangency_time(*b.m_L, p);
}

Trifurcation trifurcation_magnetization(const ModelParams& p) {
  if (!(p.J > 1.5) || !(p.h > 0.0)) {
    throw DomainError("trifurcation_magnetization: requires J > 3/2 and h > 0");
  }
  const TangencyBounds b = tangency_bounds(p);
  if (!b.L_B || !b.U_B) throw NotFound("trifurcation_magnetization: tangency bounds undefined");
  const StationarySolver solver(p);
  auto jumps_at = [&](double a) { return scenario(solver, a).jumps.size(); };

  // Coarse scan of (L_B, U_B) for the last double-bifurcation sample.
  const int n = 40;
  const double lo_b = *b.L_B;
  const double hi_b = *b.U_B;
  double lo = 0.0;
  double hi = 0.0;
  bool found = false;
  for (int i = 0; i < n; ++i) {
    const double a = lo_b + (hi_b - lo_b) * (i + 0.5) / n;
    if (jumps_at(a) == 2) {
      lo = a;
      hi = lo_b + (hi_b - lo_b) * (i + 1.5) / n;
      found = true;
    } else if (found) {
      break;
    }
  }
  if (!found) {
    // A narrow window hugging L_B is missed by the coarse scan.
    double prev = lo_b + (hi_b - lo_b) * 0.5 / n;
    for (int k = 1; k <= 30 && !found; ++k) {
      const double a = lo_b + (prev - lo_b) * 0.5;
      if (jumps_at(a) == 2) {
        lo = a;
        hi = prev;
        found = true;
      }
      prev = a;
    }
  }
  if (!found) throw NotFound("trifurcation_magnetization: double-bifurcation window is empty");

  // The two jump times approach each other linearly in M_T - alpha, so alpha
  // is resolved to machine precision.
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (jumps_at(mid) == 2 ? lo : hi) = mid;
  }
  const BifurcationReport below = scenario(solver, lo);
  Trifurcation out;
  out.M_T = lo;
  out.t_T = 0.5 * (below.jumps.front().t + below.jumps.back().t);
  out.minimizers = global_ms(solver, out.t_T, out.M_T);
  if (out.minimizers.size() < 3) {
    std::ostringstream os;
    os.precision(17);
    os << "trifurcation_magnetization: " << out.minimizers.size() << " global minima at M_T="
       << out.M_T << ", t_T=" << out.t_T;
    throw SolverInvariantViolation(os.str());
  }
  return out;
}

double h_star(double J) {
  if (!(J > 1.5)) throw DomainError("h_star: requires J > 3/2");
  auto open = [&](double h) {
    const auto g = double_window_margin(ModelParams::make(J, h));
    return g && *g > 0.0;
  };
  double lo = 0.0;
  double hi = 1e-3;
  while (open(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 64.0) throw NotFound("h_star: double-bifurcation window never closes");
  }
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (open(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace cwgng
