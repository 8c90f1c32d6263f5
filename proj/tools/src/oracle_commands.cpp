#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "commands.hpp"
#include "cwgng/cwgng.hpp"
#include "serialize.hpp"

namespace cwgng::cli {

namespace {

struct Comparison {
  std::string quantity;
  double analytic;
  double oracle;
  double tolerance;
  bool pass() const { return std::abs(analytic - oracle) <= tolerance; }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int finish(const Common& c, Report& r, const std::vector<Comparison>& rows,
           std::chrono::steady_clock::time_point t0) {
  Json table = Json::array();
  bool ok = true;
  for (const Comparison& x : rows) {
    table.push_back({{"quantity", x.quantity},
                     {"analytic", x.analytic},
                     {"oracle", x.oracle},
                     {"difference", std::abs(x.analytic - x.oracle)},
                     {"tolerance", x.tolerance},
                     {"pass", x.pass()}});
    ok = ok && x.pass();
  }
  r.results["comparison"] = table;
  r.results["pass"] = ok;
  r.wall_clock_s = seconds_since(t0);
  Sink sink(c.out);
  sink.stream() << r.to_json().dump(2) << '\n';
  if (!ok) throw OracleFailure{r.command + ": comparison outside tolerance"};
  return kOk;
}

double need_time(const Common& c) {
  if (!c.t || !(*c.t > 0.0)) throw DomainError("--t is required and must be > 0");
  return *c.t;
}

MCConfig mc_config(const Common& c, const OracleOptions& o) {
  MCConfig cfg;
  cfg.N = o.N;
  cfg.replicas = o.replicas;
  cfg.window = o.window;
  cfg.seed = c.seed;
  cfg.jobs = c.jobs;
  cfg.validate();
  return cfg;
}

Json mc_inputs(const Common& c, const OracleOptions& o) {
  return Json{{"J", c.J},         {"h", c.h},           {"t", c.t ? Json(*c.t) : Json(nullptr)},
              {"alpha", c.alpha}, {"N", o.N},           {"replicas", o.replicas},
              {"window", o.window}, {"seed", c.seed},   {"jobs", c.jobs}};
}

}  // namespace

int cmd_oracle_path_dp(const Common& c, const OracleOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const ModelParams p = ModelParams::make(c.J, c.h);
  PathGrid grid;
  grid.t = need_time(c);
  grid.alpha = c.alpha;
  grid.mag_levels = o.grid;
  grid.time_steps = o.time_steps ? o.time_steps : o.grid;
  grid.max_span = o.span;
  const PathDpResult dp = path_dp(p, grid);
  const MinimizerSet set = global_minimizers(p, grid.t, c.alpha);

  // The start is compared with whichever global minimizer is closest.
  double nearest = set.minima.front().m;
  for (const Minimum& mn : set.minima) {
    if (std::abs(mn.m - dp.start) < std::abs(nearest - dp.start)) nearest = mn.m;
  }
  const double tol = c.tol.value_or(5e-2);
  Report r;
  r.command = "oracle path-dp";
  r.inputs = {{"J", c.J},           {"h", c.h},
              {"t", grid.t},        {"alpha", c.alpha},
              {"mag_levels", grid.mag_levels}, {"time_steps", grid.time_steps},
              {"max_span", grid.max_span},     {"tol", tol}};
  r.results["minimizers"] = to_json(set);
  Json path = Json::array();
  for (const PathPoint& q : dp.path) path.push_back({q.s, q.m});
  r.results["path"] = path;
  if (set.degeneracy() > 1) r.warnings.push_back("degenerate minimizer set: any minimizer is accepted as start");
  return finish(c, r,
                {{"value", set.least_cost(), dp.value, tol}, {"start", nearest, dp.start, 0.05}}, t0);
}

int cmd_oracle_mc_kernel(const Common& c, const OracleOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const ModelParams p = ModelParams::make(c.J, c.h);
  const double t = need_time(c);
  const MCConfig cfg = mc_config(c, o);
  const MinimizerSet set = global_minimizers(p, t, c.alpha);
  const KernelEstimate est = mc_spec_kernel(cfg, p, t, c.alpha);
  const SpecKernel k = spec_kernel(t, c.alpha, set.minima.front().m, p);
  Report r;
  r.command = "oracle mc-kernel";
  r.inputs = mc_inputs(c, o);
  r.results["estimate"] = {{"gamma_plus_hat", est.gamma_plus_hat},
                           {"std_err", est.std_err},
                           {"accepted", est.accepted},
                           {"replicas", est.replicas}};
  r.results["m0"] = set.minima.front().m;
  if (set.degeneracy() > 1) r.warnings.push_back("alpha is bad at this time: kernel compared at the smallest minimizer");
  const double tol = std::max(3.0 * est.std_err, c.tol.value_or(0.02));
  return finish(c, r, {{"gamma_plus", k.gamma_plus, est.gamma_plus_hat, tol}}, t0);
}

int cmd_oracle_mc_posterior(const Common& c, const OracleOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const ModelParams p = ModelParams::make(c.J, c.h);
  const double t = need_time(c);
  const MCConfig cfg = mc_config(c, o);
  const MinimizerSet set = global_minimizers(p, t, c.alpha);
  const MagnetizationHistogram hist = mc_conditional_initial(cfg, p, t, c.alpha);
  const std::vector<double> modes = hist.modes(0.25, o.bin);
  const double tol = c.tol.value_or(0.1);

  Report r;
  r.command = "oracle mc-posterior";
  r.inputs = mc_inputs(c, o);
  r.results["minimizers"] = to_json(set);
  r.results["modes"] = modes;
  r.results["histogram"] = {{"levels", hist.levels}, {"counts", hist.counts}, {"accepted", hist.accepted}};
  std::vector<Comparison> rows;
  rows.push_back({"mode count", static_cast<double>(set.degeneracy()), static_cast<double>(modes.size()), 0.0});
  for (const Minimum& mn : set.minima) {
    double best = std::numeric_limits<double>::quiet_NaN();
    for (double m : modes) {
      if (std::isnan(best) || std::abs(m - mn.m) < std::abs(best - mn.m)) best = m;
    }
    rows.push_back({"mode near minimizer", mn.m, std::isnan(best) ? std::numeric_limits<double>::infinity() : best, tol});
  }
  return finish(c, r, rows, t0);
}

}  // namespace cwgng::cli
