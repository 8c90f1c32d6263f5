// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "cwgng/cwgng.hpp"
#include "support/oracles.hpp"

using namespace cwgng;
namespace fs = std::filesystem;

namespace {

ModelParams P(double J, double h) { return ModelParams::make(J, h); }

// Collects failed checks; a criterion passes when none failed.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++count_;
  }
  void near(double x, double y, double tol, const std::string& what) {
    std::ostringstream os;
    os.precision(12);
    os << what << ": " << x << " vs " << y << " (tol " << tol << ")";
    expect(std::abs(x - y) <= tol, os.str());
  }
  bool ok() const { return count_ == 0; }
  std::string summary() const {
    std::string s;
    for (const auto& f : failures_) s += "\n    " + f;
    if (count_ > static_cast<int>(failures_.size())) s += "\n    ...";
    return s;
  }

 private:
  std::vector<std::string> failures_;
  int count_ = 0;
};

std::string str(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

void master_consistency(Check& c) {
  oracle::Draws d(101);
  for (int i = 0; i < 50; ++i) {
    const ModelParams p = P(d.uniform(1e-3, 3.0), d.uniform(-1, 1));
    const double t = d.uniform(0.05, 5.0), alpha = d.uniform(-0.95, 0.95), m = d.uniform(-0.95, 0.95);
    const ConditionedCost cost(p, t, alpha);
    const double action = action_integral(optimal_trajectory(cost, m)).value;
    c.near(cost(m) - static_rate(m, p), action, 1e-8, "draw " + std::to_string(i));
  }
}

void stationarity(Check& c) {
  oracle::Draws d(102);
  for (int i = 0; i < 30; ++i) {
    const ModelParams p = P(d.uniform(0.05, 3.0), d.uniform(-1, 1));
    const double t = std::exp(d.uniform(std::log(0.01), std::log(5.0))), alpha = d.uniform(-0.95, 0.95);
    const ConditionedCost cost(p, t, alpha);
    for (const auto& sp : stationary_points(p, t, alpha)) {
      const double e = 1e-6 * std::min(1.0, (1 - std::abs(sp.m)) / 2);
      const double fd = (cost(sp.m + e) - cost(sp.m - e)) / (2 * e);
      c.expect(std::abs(fd) <= 1e-6, "C'(" + str(sp.m) + ") = " + str(fd));
      c.expect(std::abs(k_fn(sp.m, p) - l_fn(sp.m, t, alpha)) <= 1e-11, "k - l at " + str(sp.m));
    }
  }
}

// First time at which the alpha = 0 minimizer set is not a singleton.
double degeneracy_time(double J) {
  const ModelParams p = P(J, 0);
  double lo = 1e-3, hi = 5.0;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (global_minimizers(p, mid, 0.0).degeneracy() >= 2 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

void closed_form_psi_c(Check& c) {
  for (double J : {1.1, 1.2, 1.3, 1.4, 1.5}) c.near(degeneracy_time(J), 0.5 * acoth(2 * J - 1), 1e-6, "J=" + str(J));
}

void cone_opening(Check& c) {
  const double ms = m_star(2.0), pc = psi_c(2.0);
  c.expect(ms > 0.1, "m_* > 0.1");
  c.near(cost_on_branch(ms, 2.0), 0.0, 1e-9, "C_M(m_*)");
  double best = INFINITY;
  for (const auto& x : global_minimizers(P(2.0, 0), pc, 0.0).minima) best = std::min(best, std::abs(std::abs(x.m) - ms));
  c.near(best, 0.0, 1e-6, "m_hat(psi_c) vs m_*");
  c.near(std::abs(global_minimizers(P(2.0, 0), pc + 1e-6, 0.0).minima.front().m), ms, 1e-3, "just after psi_c");
  const double opened = std::abs(global_minimizers(P(1.3, 0), psi_c(1.3) + 1e-4, 0.0).minima.front().m);
  c.expect(opened < 0.05, "J=1.3 opening " + str(opened));
}

void path_dp_oracle(Check& c) {
  const ModelParams p = P(1.6, 0);
  for (double t : {0.2, psi_c(1.6), 1.0}) {
    PathGrid g;
    g.time_steps = 400;
    g.mag_levels = 400;
    g.t = t;
    g.alpha = 0.0;
    const PathDpResult r = path_dp(p, g);
    const MinimizerSet set = global_minimizers(p, t, 0.0);
    c.near(r.value, set.least_cost(), 5e-2, "value t=" + str(t));
    double best = INFINITY;
    for (const auto& x : set.minima) best = std::min(best, std::abs(r.start - x.m));
    c.expect(best <= 0.05, "start t=" + str(t) + ": " + str(r.start));
  }
}

void mc_kernel(Check& c) {
  const ModelParams p = P(1.0, 0.2);
  MCConfig cfg;
  cfg.N = 200;
  cfg.replicas = 100000;
  cfg.window = 0.05;
  cfg.seed = 20240601;
  const KernelEstimate e = mc_spec_kernel(cfg, p, 0.5, 0.3);
  const double m0 = global_minimizers(p, 0.5, 0.3).minima.front().m;
  c.near(e.gamma_plus_hat, spec_kernel(0.5, 0.3, m0, p).gamma_plus, std::max(3 * e.std_err, 0.02), "gamma_plus");
}

void reference_regimes(Check& c) {
  const OvershootProfile o = overshoot_profile(P(0.95, 0.01), 0.46);
  c.expect(o.regime == Regime::r1a && o.m_R.has_value(), "(0.95, 0.01, 0.46) is 1a");
  if (o.m_R) {
    c.expect(std::abs(overshoot_phi(*o.m_R, P(0.95, 0.01), 0.46)) <= 1e-8, "Phi(m_R)");
    c.expect(*o.m_R > o.m_inf, "m_R > m_inf");
  }
  c.expect(overshoot_profile(P(0.3, 0.04), 0.28).regime == Regime::r1b, "(0.3, 0.04, 0.28) is 1b");

  for (double a : {-0.6, -0.2, -0.05, 0.05, 0.2, 0.6}) {
    c.expect(scenario(P(1.15, 0), a).scenario == ScenarioKind::none, "(1.15, 0) alpha=" + str(a));
  }
  c.expect(scenario(P(1.15, 0), 0.0).scenario != ScenarioKind::none, "(1.15, 0) alpha=0 bifurcates");

  const TangencyBounds b = tangency_bounds(P(2.5, 0));
  c.expect(b.U_B && *b.U_B > 0, "(2.5, 0) U_B > 0");
  const CrossoverTimes x = crossover_times(P(2.5, 0));
  if (x.psi_U && x.psi_c) {
    for (double w : {0.25, 0.5, 0.75}) {
      const auto bad = bad_set(P(2.5, 0), *x.psi_U + w * (*x.psi_c - *x.psi_U));
      c.expect(bad.size() == 2 && std::abs(bad[0] + bad[1]) <= 1e-9 && bad[1] > 0, "(2.5, 0) bad pair w=" + str(w));
    }
  } else {
    c.expect(false, "(2.5, 0) psi_U and psi_c present");
  }

  const GibbsTimeline tl = gibbs_timeline(P(1.42, 0.15), 10.0);
  c.expect(!tl.segments.empty() && tl.segments.back().status == GibbsStatus::gibbs && tl.segments.size() == 3,
           "(1.42, 0.15) Gibbs recovery");
  if (tl.crossovers.psi_star) c.expect(tl.segments.back().t_lo == *tl.crossovers.psi_star, "recovery at psi_*");

  const Trifurcation tri = trifurcation_magnetization(P(2.9, 0.15));
  c.expect(tri.M_T < 0 && tri.minimizers.size() == 3, "(2.9, 0.15) trifurcation with M_T < 0");
  bool absent = false;
  try {
    trifurcation_magnetization(P(2.9, 1.6));
  } catch (const NotFound&) {
    absent = true;
  }
  c.expect(absent, "(2.9, 1.6) no trifurcation");
}

void monotonicity(Check& c) {
  const StationarySolver solver(P(2.9, 0.15));
  double prev_t = INFINITY, prev_s = -INFINITY;
  for (int i = 0; i < 20; ++i) {
    const double a = -0.98 + i * (0.28 + 0.98) / 19;
    const BifurcationReport r = scenario(solver, a);
    c.expect(r.t_B && *r.t_B < prev_t, "t_B decreasing at alpha=" + str(a));
    if (r.t_B) prev_t = *r.t_B;
    if (r.s_B) {
      c.expect(*r.s_B > prev_s, "s_B increasing at alpha=" + str(a));
      prev_s = *r.s_B;
    }
  }
  double prev_psi = INFINITY, prev_m = 0;
  for (double J : {1.6, 2.0, 2.5, 3.0}) {
    c.expect(psi_c(J) < prev_psi, "psi_c decreasing at J=" + str(J));
    c.expect(m_star(J) > prev_m, "m_* increasing at J=" + str(J));
    prev_psi = psi_c(J);
    prev_m = m_star(J);
  }
  const CrossoverTimes x = crossover_times(P(2.9, 0.15));
  if (x.psi_U && x.psi_L && x.psi_T && x.psi_star) {
    c.expect(*x.psi_U < std::min({*x.psi_L, *x.psi_T, *x.psi_star}), "psi_U first");
    c.expect(std::max({*x.psi_L, *x.psi_T}) < *x.psi_star, "psi_* last");
  } else {
    c.expect(false, "all four crossover times present");
  }
}

void symmetry_and_limits(Check& c) {
  oracle::Draws d(109);
  for (int i = 0; i < 20; ++i) {
    const ModelParams p = P(d.uniform(0.05, 3.0), 0.0);
    const double t = d.uniform(0.05, 5.0), a = d.uniform(-0.95, 0.95), m = d.uniform(-0.95, 0.95);
    c.near(ConditionedCost(p, t, a)(m), ConditionedCost(p, t, -a)(-m), 1e-12, "cost symmetry " + std::to_string(i));
    const auto plus = global_minimizers(p, t, a).minima, minus = global_minimizers(p, t, -a).minima;
    c.expect(plus.size() == minus.size(), "minimizer count symmetry " + std::to_string(i));
    for (std::size_t k = 0; k < std::min(plus.size(), minus.size()); ++k) {
      c.near(plus[k].m, -minus[minus.size() - 1 - k].m, 1e-12, "minimizer symmetry " + std::to_string(i));
    }

    const ModelParams q = P(d.uniform(0.05, 3.0), d.uniform(0.05, 1.0));
    c.near(global_minimizers(q, 20.0, a).minima.front().m, m_infinity(q), 1e-6, "t=20 limit " + std::to_string(i));

    const ModelParams s = P(d.uniform(0.05, 2.0), d.uniform(-0.3, 0.3));
    const double as = d.uniform(-0.9, 0.9);
    c.near(global_minimizers(s, 1e-3, as).minima.front().m, as, 0.01, "t=1e-3 limit " + std::to_string(i));
  }
}

std::string slurp(const fs::path& f) {
  std::ifstream in(f, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void scan_determinism(Check& c) {
  const fs::path root = fs::temp_directory_path() / ("cwgng_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  const fs::path config = fs::path(CWGNG_CONFIG_DIR) / "scan_small.yaml";
  std::vector<fs::path> outs{root / "a", root / "b"};
  for (std::size_t i = 0; i < outs.size(); ++i) {
    const std::string cmd = std::string("\"") + CWGNG_CLI + "\" scan --config \"" + config.string() +
                            "\" --out-dir \"" + outs[i].string() + "\" --seed 5 --jobs " +
                            std::to_string(i + 1) + " > /dev/null 2>&1";
    c.expect(std::system(cmd.c_str()) == 0, "scan run " + std::to_string(i + 1));
  }
  std::vector<std::string> names;
  if (fs::exists(outs[0])) {
    for (const auto& e : fs::directory_iterator(outs[0])) names.push_back(e.path().filename().string());
  }
  c.expect(names.size() >= 3, "outputs written");
  for (const auto& n : names) {
    c.expect(fs::exists(outs[1] / n), n + " present in both runs");
    c.expect(slurp(outs[0] / n) == slurp(outs[1] / n), n + " byte-identical");
  }
  std::size_t other = 0;
  if (fs::exists(outs[1])) other = static_cast<std::size_t>(std::distance(fs::directory_iterator(outs[1]), fs::directory_iterator()));
  c.expect(other == names.size(), "same file set");
  fs::remove_all(root);
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "master consistency", 10, master_consistency},
      {2, "stationarity", 5, stationarity},
      {3, "closed-form psi_c", 30, closed_form_psi_c},
      {4, "discontinuous cone opening", 10, cone_opening},
      {5, "path-DP oracle", 120, path_dp_oracle},
      {6, "Monte Carlo kernel", 120, mc_kernel},
      {7, "reference regimes", 300, reference_regimes},
      {8, "monotonicity suite", 180, monotonicity},
      {9, "symmetry and limits", 10, symmetry_and_limits},
      {10, "scan determinism", 300, scan_determinism},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(dt < cr.budget_s, "runtime over budget of " + str(cr.budget_s) + " s");
    std::printf("criterion %2d %-28s %s  %.2f s%s\n", cr.id, cr.name, c.ok() ? "PASS" : "FAIL", dt,
                c.summary().c_str());
    std::fflush(stdout);
    failed += !c.ok();
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
