#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include "cwgng/cwgng.hpp"
#include "serialize.hpp"

namespace cwgng::cli {

Sink::Sink(const std::string& path) : console_(&std::cout) {
  if (path.empty() || path == "-") return;
  file_.open(path, std::ios::out | std::ios::trunc);
  if (!file_) throw DomainError("cannot open output file '" + path + "'");
}

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

double need_t(const Common& c) {
  require(c.t.has_value(), "--t is required");
  require(*c.t > 0.0 && std::isfinite(*c.t), "--t must be > 0");
  return *c.t;
}

double need_t_max(const Common& c) {
  require(c.t_max.has_value(), "--t-max is required");
  require(*c.t_max > 0.0 && std::isfinite(*c.t_max), "--t-max must be > 0");
  return *c.t_max;
}

void check_alpha(double alpha) { require(std::abs(alpha) <= 1.0, "--alpha must satisfy |alpha| <= 1"); }

bool wants_json(const Common& c, bool default_json) {
  if (c.format.empty()) return default_json;
  require(c.format == "csv" || c.format == "json", "--format must be csv or json");
  return c.format == "json";
}

Json echo(const Common& c) {
  Json j{{"J", c.J}, {"h", c.h}};
  if (c.t) j["t"] = *c.t;
  if (c.t_max) j["t_max"] = *c.t_max;
  j["alpha"] = c.alpha;
  if (c.m) j["m"] = *c.m;
  if (c.samples) j["samples"] = c.samples;
  if (c.tol) j["tol"] = *c.tol;
  return j;
}

// Reports carry a wall clock; curves are bare data.
class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const Common& c, Report& r, const Timer& timer) {
  r.wall_clock_s = timer.seconds();
  Sink sink(c.out);
  sink.stream() << r.to_json().dump(2) << '\n';
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void emit_table(const Common& c, const std::string& command, const Table& t, const Timer& timer) {
  if (wants_json(c, false)) {
    Report r;
    r.command = command;
    r.inputs = echo(c);
    r.results = {{"columns", t.header}, {"rows", t.rows}};
    emit(c, r, timer);
    return;
  }
  Sink sink(c.out);
  CsvWriter csv(sink.stream(), t.header);
  for (const auto& row : t.rows) {
    std::vector<std::string> cells;
    for (double x : row) cells.push_back(fmt(x));
    csv.row(cells);
  }
}

MinimizerSet minimizers(const Common& c, const ModelParams& p, double t) {
  if (c.tol) require(*c.tol > 0.0, "--tol must be > 0");
  return StationarySolver(p).minimizers(t, c.alpha, c.tol.value_or(StationarySolver::kEqualityTolerance));
}

void require_json(const Common& c) { require(wants_json(c, true), "this command only writes json"); }

}  // namespace

int cmd_cost(const Common& c) {
  const Timer timer;
  const ModelParams p = ModelParams::make(c.J, c.h);
  const double t = need_t(c);
  check_alpha(c.alpha);
  const int n = c.samples ? c.samples : 401;
  require(n >= 2, "--samples must be >= 2");
  const ConditionedCost cost(p, t, c.alpha);
  Table tab{{"m", "cost"}, {}};
  for (int i = 0; i < n; ++i) {
    const double m = -1.0 + 2.0 * i / (n - 1);
    tab.rows.push_back({m, cost(m)});
  }
  emit_table(c, "cost", tab, timer);
  return kOk;
}

int cmd_trajectory(const Common& c) {
  const Timer timer;
  const ModelParams p = ModelParams::make(c.J, c.h);
  const double t = need_t(c);
  check_alpha(c.alpha);
  const int n = c.samples ? c.samples : 201;
  require(n >= 2, "--samples must be >= 2");
  double m0;
  if (c.m) {
    require(std::abs(*c.m) <= 1.0, "--m must satisfy |m| <= 1");
    m0 = *c.m;
  } else {
    const MinimizerSet set = minimizers(c, p, t);
    m0 = set.minima.front().m;
    if (set.degeneracy() > 1) {
      std::cerr << "warning: " << set.degeneracy()
                << " global minimizers; using the smallest, pass --m to choose\n";
    }
  }
  const Trajectory traj = optimal_trajectory(ConditionedCost(p, t, c.alpha), m0);
  Table tab{{"s", "phi"}, {}};
  for (int i = 0; i < n; ++i) {
    const double s = t * i / (n - 1);
    tab.rows.push_back({s, traj(s)});
  }
  emit_table(c, "trajectory", tab, timer);
  return kOk;
}

int cmd_branch(const Common& c) {
  const Timer timer;
  const ModelParams p = ModelParams::make(c.J, c.h);
  const double t_max = need_t_max(c);
  check_alpha(c.alpha);
  const int n = c.samples ? c.samples : 400;
  require(n >= 2, "--samples must be >= 2");
  std::vector<double> grid;
  for (int i = 1; i <= n; ++i) grid.push_back(t_max * i / n);
  const BranchTrack track = branch_track(p, c.alpha, grid);
  Table tab{{"t", "mhat", "jump"}, {}};
  for (const BranchSample& s : track.samples) tab.rows.push_back({s.t, s.m_hat, s.jump ? 1.0 : 0.0});
  emit_table(c, "branch", tab, timer);
  return kOk;
}

int cmd_scenario(const Common& c) {
  const Timer timer;
  require_json(c);
  const ModelParams p = ModelParams::make(c.J, c.h);
  check_alpha(c.alpha);
  ScenarioOptions opt;
  opt.cross_validate = c.validate;
  if (c.t_max) opt.t_end = need_t_max(c);
  Report r;
  r.command = "scenario";
  r.inputs = echo(c);
  r.results = to_json(scenario(p, c.alpha, opt));
  emit(c, r, timer);
  return kOk;
}

int cmd_crossovers(const Common& c) {
  const Timer timer;
  require_json(c);
  const ModelParams p = ModelParams::make(c.J, c.h);
  CrossoverOptions opt;
  opt.validate = c.validate;
  const CrossoverTimes ct = crossover_times(p, opt);
  Report r;
  r.command = "crossovers";
  r.inputs = echo(c);
  r.results = to_json(ct);
  if (ct.psi_L && ct.psi_T) {
    r.warnings.push_back(ct.psi_L < ct.psi_T
                             ? "realized ordering has psi_L < psi_T: the two-point bad set lives on (psi_L, psi_T)"
                             : "realized ordering has psi_T < psi_L");
  }
  emit(c, r, timer);
  return kOk;
}

int cmd_classify(const Common& c) {
  const Timer timer;
  require_json(c);
  const ModelParams p = ModelParams::make(c.J, c.h);
  const double t_max = need_t_max(c);
  Report r;
  r.command = "classify";
  r.inputs = echo(c);
  r.results = to_json(gibbs_timeline(p, t_max, c.samples ? c.samples : 3));
  emit(c, r, timer);
  return kOk;
}

int cmd_overshoot(const Common& c) {
  const Timer timer;
  require_json(c);
  const ModelParams p = ModelParams::make(c.J, c.h);
  check_alpha(c.alpha);
  Report r;
  r.command = "overshoot";
  r.inputs = echo(c);
  r.results = to_json(overshoot_profile(p, c.alpha));
  emit(c, r, timer);
  return kOk;
}

int cmd_speckernel(const Common& c) {
  const Timer timer;
  require_json(c);
  const ModelParams p = ModelParams::make(c.J, c.h);
  const double t = need_t(c);
  check_alpha(c.alpha);
  Report r;
  r.command = "speckernel";
  r.inputs = echo(c);
  Json kernels = Json::array();
  if (c.m) {
    const SpecKernel k = spec_kernel(t, c.alpha, *c.m, p);
    kernels.push_back({{"m0", *c.m}, {"gamma_plus", k.gamma_plus}, {"gamma_minus", k.gamma_minus}});
  } else {
    const MinimizerSet set = minimizers(c, p, t);
    for (const Minimum& mn : set.minima) {
      const SpecKernel k = spec_kernel(t, c.alpha, mn.m, p);
      kernels.push_back({{"m0", mn.m}, {"gamma_plus", k.gamma_plus}, {"gamma_minus", k.gamma_minus}});
    }
    r.results["bad"] = set.degeneracy() > 1;
    if (set.degeneracy() > 1) r.warnings.push_back("alpha is bad at this time: the kernel is not unique");
  }
  r.results["kernels"] = kernels;
  emit(c, r, timer);
  return kOk;
}

int cmd_badset(const Common& c) {
  const Timer timer;
  const ModelParams p = ModelParams::make(c.J, c.h);
  const StationarySolver solver(p);
  std::vector<double> times;
  if (c.t) {
    times.push_back(need_t(c));
  } else {
    const double t_max = need_t_max(c);
    const int n = c.samples ? c.samples : 200;
    require(n >= 1, "--samples must be >= 1");
    for (int i = 1; i <= n; ++i) times.push_back(t_max * i / n);
  }
  Table tab{{"t", "alpha_bad"}, {}};
  for (double t : times) {
    for (double a : bad_set(solver, t)) tab.rows.push_back({t, a});
  }
  emit_table(c, "badset", tab, timer);
  return kOk;
}

}  // namespace cwgng::cli
